#ifndef HYPERAFF_PIPELINE_HPP
#define HYPERAFF_PIPELINE_HPP

#include "hyperaff/density.hpp"

namespace hyperaff {

enum class Outcome { Hypercyclic, NotHypercyclic, Inconclusive };

struct PipelineOptions {
    NormalFormOptions normal_form;
    NumericDensityOptions density;
    /// Per-generator, per-block logarithm branch choices; empty means all 0.
    std::vector<std::vector<long>> branches;
    /// User-supplied f' witnesses (one per generator, verified against
    /// exp(Psi(f')) = Phi(f)); empty means compute them via the cone log.
    std::vector<AffineMap> supplied_witnesses;
    /// Skip the exact decision even when the instance is exact.
    bool force_numeric = false;
    /// User-supplied conjugation, verified instead of computed.
    std::optional<CMatrix> trusted_P;
    std::optional<Partition> trusted_partition;
};

struct DecisionReport {
    Outcome outcome = Outcome::Inconclusive;
    /// True when the outcome is proved (exact density decision or a
    /// structural generator-count shortcut).
    bool certified = false;
    std::size_t n = 0;  // ambient dimension
    std::size_t p = 0;  // number of generators
    Partition partition;
    bool shortcut_applied = false;
    std::string shortcut_reason;
    std::optional<NormalForm> normal_form;
    std::vector<LogWitness> witnesses;
    std::optional<DensityVerdict> density;
    std::string detail;
};

/// Too few generators can never give a dense orbit: p <= n outright, or
/// p <= 2n - r + 1 once the block count r is known. Returns the reason when
/// the shortcut fires.
std::optional<std::string> shortcut_generator_count(std::size_t p, std::size_t n,
                                                    std::optional<std::size_t> r);

/// End-to-end decision for the semigroup generated by fs. Throws
/// NotAbelianError / NotInvertibleError for malformed input; numeric
/// failures inside the stages surface as NumericalFailure.
DecisionReport decide_hypercyclic(const std::vector<AffineMap>& fs,
                                  const PipelineOptions& opts = {});

}  // namespace hyperaff

#endif
