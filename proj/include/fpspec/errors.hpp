#pragma once

#include <stdexcept>
#include <string>

namespace fpspec {

#define FPSPEC_ERROR(Name)                                        \
  struct Name : std::runtime_error {                              \
    explicit Name(const std::string& what) : runtime_error(what) {} \
  }

FPSPEC_ERROR(GammaOutOfRange);
FPSPEC_ERROR(NormalizationFailure);
FPSPEC_ERROR(PositivityViolation);
FPSPEC_ERROR(OriginEvaluation);
FPSPEC_ERROR(InvalidGrid);
FPSPEC_ERROR(DegenerateSample);
FPSPEC_ERROR(SingularBorderedSystem);
FPSPEC_ERROR(NoConvergence);
FPSPEC_ERROR(EtaZero);
FPSPEC_ERROR(NewtonDiverged);
FPSPEC_ERROR(LambdaOutOfDisk);
FPSPEC_ERROR(FitDegenerate);
FPSPEC_ERROR(SolveFailure);
FPSPEC_ERROR(TruncationUnstable);
FPSPEC_ERROR(ImaginaryResidual);
FPSPEC_ERROR(QuadratureFailure);
FPSPEC_ERROR(ZeroJm);
FPSPEC_ERROR(RangeMismatch);
FPSPEC_ERROR(UnboundedRatio);
FPSPEC_ERROR(StepCollapse);
FPSPEC_ERROR(SolverFailure);
FPSPEC_ERROR(BlowUp);
FPSPEC_ERROR(HorizonMismatch);
FPSPEC_ERROR(ConfigError);

#undef FPSPEC_ERROR

}  // namespace fpspec
