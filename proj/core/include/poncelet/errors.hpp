#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace poncelet {

// Base class for all library errors.  `name()` is the stable machine-readable
// identifier used in CLI reports and exit-code mapping.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + (what.empty() ? "" : ": " + what)),
        name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define PONCELET_ERROR(NAME)                       \
  struct NAME : Error {                            \
    explicit NAME(const std::string& w = "")       \
        : Error(#NAME, w) {}                       \
  }

// confocal
PONCELET_ERROR(NonFiniteInput);
PONCELET_ERROR(ConvergenceFailure);
PONCELET_ERROR(NegativeRadicand);
PONCELET_ERROR(DegenerateLine);
PONCELET_ERROR(RootIsolationFailure);

// dynamics
PONCELET_ERROR(PointNotOnQuadric);
PONCELET_ERROR(GrazingIncidence);
PONCELET_ERROR(EscapeDetected);
PONCELET_ERROR(CornerHit);
PONCELET_ERROR(InflectionAmbiguous);
PONCELET_ERROR(UnbalancedCounts);
PONCELET_ERROR(OrderViolation);
PONCELET_ERROR(IntegrationFailure);
PONCELET_ERROR(EmptyRange);

// series
PONCELET_ERROR(CenterMismatch);
PONCELET_ERROR(DivisionByZeroConstantTerm);
PONCELET_ERROR(BranchPointCenter);
PONCELET_ERROR(SubstitutionPole);

// conditions
PONCELET_ERROR(NegativeDiscriminant);
PONCELET_ERROR(InsufficientOrder);
PONCELET_ERROR(VacuousCondition);
PONCELET_ERROR(HypothesisViolated);

// abeljacobi
PONCELET_ERROR(IntervalCrossesNegativeRegion);
PONCELET_ERROR(DegenerateCurve);
PONCELET_ERROR(NoValidMuPair);

// cli
PONCELET_ERROR(SchemaError);
PONCELET_ERROR(SearchExhausted);

#undef PONCELET_ERROR

}  // namespace poncelet
