#ifndef HYPERAFF_EXP_LOG_HPP
#define HYPERAFF_EXP_LOG_HPP

#include <optional>

#include "hyperaff/normal_form.hpp"

namespace hyperaff {

/// f' in q with exp(Psi(fprime)) = Phi(f), plus the branch data that chose it.
struct LogWitness {
    AffineMap f;
    AffineMap fprime;
    std::vector<long> branch_shifts;  // per-block 2*pi*i multiples
    long psi_shift = 0;               // the k of the Psi(MA) branch correction
};

/// Scalar exponential, exact where the tower supports it: exponents of the
/// form sum(c_j * log(p_j)) + i * t * pi with integer c_j, t map to
/// (prod p_j^c_j) * (-1)^t. Returns nullopt otherwise.
std::optional<CNumber> exact_exp(const CNumber& mu);

/// Scalar logarithm branch log|mu| + i*(arg + 2*pi*branch), exact for
/// rational mu on the real or imaginary axis. Returns nullopt otherwise.
std::optional<CNumber> exact_log(const CNumber& mu, long branch);

/// Exponential of a K_{eta,r} member: per block exp(mu I + Nil) =
/// e^mu * sum Nil^j / j!. Exact whenever e^mu is; float otherwise.
CMatrix exp_k(const CMatrix& n, const Partition& partition);

/// Logarithm of a K*_{eta,r} member with per-block branch choices; the
/// nilpotent series is finite. exp_k(log_k(M)) = M.
CMatrix log_k(const CMatrix& m, const Partition& partition,
              const std::vector<long>& branches);

struct PsiAdjustResult {
    CMatrix matrix;
    long shift = 0;
};

/// Subtracts 2*i*k*pi*I so that the (1,1) entry becomes exactly zero; the
/// input must have its (1,1) entry an integer multiple of 2*pi*i.
PsiAdjustResult psi_adjust(const CMatrix& n, double tol = 1e-9);

/// Full witness construction: conjugate by P, take the cone log, conjugate
/// back, land in Psi(MA) via psi_adjust, and pull back through Psi.
LogWitness log_witness(const AffineMap& f, const NormalForm& nf,
                       const std::vector<long>& branches = {});

/// Max entrywise deviation |exp(Psi(fprime)) - Phi(f)| in the float shadow
/// (dense scaling-and-squaring exponential; no cone assumption).
double witness_deviation(const AffineMap& f, const AffineMap& fprime);

}  // namespace hyperaff

#endif
