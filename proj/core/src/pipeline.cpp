#include "hyperaff/pipeline.hpp"

namespace hyperaff {

std::optional<std::string> shortcut_generator_count(std::size_t p, std::size_t n,
                                                    std::optional<std::size_t> r) {
    if (p <= n)
        return "p = " + std::to_string(p) + " generators <= n = " + std::to_string(n);
    if (r && p + *r <= 2 * n + 1)
        return "p = " + std::to_string(p) + " generators <= 2n - r + 1 = " +
               std::to_string(2 * n + 1 - *r);
    return std::nullopt;
}

DecisionReport decide_hypercyclic(const std::vector<AffineMap>& fs,
                                  const PipelineOptions& opts) {
    if (fs.empty()) throw std::invalid_argument("decide_hypercyclic: empty family");
    DecisionReport rep;
    rep.p = fs.size();
    rep.n = fs.front().n;

    if (auto reason = shortcut_generator_count(rep.p, rep.n, std::nullopt)) {
        auto check = check_abelian(fs);
        if (!check.abelian) throw NotAbelianError(check.first, check.second);
        rep.outcome = Outcome::NotHypercyclic;
        rep.certified = true;
        rep.shortcut_applied = true;
        rep.shortcut_reason = *reason;
        rep.detail = "generator-count shortcut";
        return rep;
    }

    NormalForm nf = opts.trusted_P
                        ? trusted_normal_form(fs, *opts.trusted_P,
                                              opts.trusted_partition.value(),
                                              opts.normal_form)
                        : find_normal_form(fs, opts.normal_form);
    rep.partition = nf.partition;
    rep.normal_form = nf;

    if (auto reason = shortcut_generator_count(rep.p, rep.n, nf.partition.r())) {
        rep.outcome = Outcome::NotHypercyclic;
        rep.certified = true;
        rep.shortcut_applied = true;
        rep.shortcut_reason = *reason;
        rep.detail = "generator-count shortcut";
        return rep;
    }

    std::vector<AffineMap> fprimes;
    if (!opts.supplied_witnesses.empty()) {
        if (opts.supplied_witnesses.size() != fs.size())
            throw std::invalid_argument("witness count != generator count");
        for (std::size_t k = 0; k < fs.size(); ++k) {
            double dev = witness_deviation(fs[k], opts.supplied_witnesses[k]);
            if (dev > 1e-9 * (1 + phi(fs[k]).max_abs()))
                throw NumericalFailure("supplied witness " + std::to_string(k + 1) +
                                       " fails the exponential check, deviation " +
                                       std::to_string(dev));
            LogWitness w;
            w.f = fs[k];
            w.fprime = opts.supplied_witnesses[k];
            fprimes.push_back(w.fprime);
            rep.witnesses.push_back(std::move(w));
        }
    } else {
        for (std::size_t k = 0; k < fs.size(); ++k) {
            const std::vector<long>& br =
                k < opts.branches.size() ? opts.branches[k] : std::vector<long>{};
            LogWitness w = log_witness(fs[k], nf, br);
            fprimes.push_back(w.fprime);
            rep.witnesses.push_back(std::move(w));
        }
    }

    DensityInstance inst{rep.n, q_w0_generators(fprimes, nf)};
    PropertyDMatrix m = assemble_property_d(inst);
    DensityVerdict verdict = (m.exact && !opts.force_numeric)
                                 ? decide_dense_exact(m)
                                 : decide_dense_numeric(m, opts.density);
    rep.certified = verdict.certified;
    rep.outcome =
        verdict.result == Density::Dense ? Outcome::Hypercyclic : Outcome::NotHypercyclic;
    rep.detail = verdict.detail;
    rep.density = std::move(verdict);
    return rep;
}

}  // namespace hyperaff
