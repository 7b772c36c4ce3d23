#include "hyperaff/exp_log.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

namespace hyperaff {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// log(p) symbol recognition: returns the prime when the monomial is a bare
/// log-prime axis.
std::optional<Int> as_log_prime(const Monomial& m, int& exp_out) {
    if (m.radicand != 1 || m.trans.size() != 1) return std::nullopt;
    const auto& [sym, exp] = m.trans.front();
    const std::string& s = sym.name;
    if (s.size() < 6 || s.compare(0, 4, "log(") != 0 || s.back() != ')') return std::nullopt;
    exp_out = exp;
    return Int(s.substr(4, s.size() - 5));
}

bool is_pi_monomial(const Monomial& m) {
    return m.radicand == 1 && m.trans.size() == 1 && m.trans.front().first.name == "pi" &&
           m.trans.front().second == 1;
}

/// log of a positive rational as a Z-combination of log(prime) symbols.
SymScalar log_rational(const Rational& q) {
    SymScalar out;
    for (const auto& [p, e] : factorize(boost::multiprecision::numerator(q)))
        out += SymScalar(Rational(e), symbol_monomial(log_prime_symbol(p)));
    for (const auto& [p, e] : factorize(boost::multiprecision::denominator(q)))
        out -= SymScalar(Rational(e), symbol_monomial(log_prime_symbol(p)));
    return out;
}

SymScalar pi_times(const Rational& c) { return SymScalar(c, symbol_monomial(pi_symbol())); }

struct BlockSpan {
    std::size_t begin, end;
};

std::vector<BlockSpan> block_spans(const Partition& p) {
    std::vector<BlockSpan> out;
    std::size_t off = 0;
    for (auto nk : p.eta) {
        out.push_back({off, off + nk});
        off += nk;
    }
    return out;
}

CMatrix block_of(const CMatrix& m, const BlockSpan& b) {
    CMatrix out(b.end - b.begin, b.end - b.begin);
    for (std::size_t i = b.begin; i < b.end; ++i)
        for (std::size_t j = b.begin; j < b.end; ++j)
            out.at(i - b.begin, j - b.begin) = m.at(i, j);
    return out;
}

void place_block(CMatrix& m, const CMatrix& blk, const BlockSpan& b) {
    for (std::size_t i = 0; i < blk.rows(); ++i)
        for (std::size_t j = 0; j < blk.cols(); ++j) m.at(b.begin + i, b.begin + j) = blk.at(i, j);
}

}  // namespace

std::optional<CNumber> exact_exp(const CNumber& mu) {
    if (!mu.is_exact()) return std::nullopt;
    Rational result = 1;
    for (const auto& [m, c] : mu.re().terms()) {
        int exp = 0;
        auto p = as_log_prime(m, exp);
        if (!p || exp != 1 || !is_integer(c)) return std::nullopt;
        Int e = boost::multiprecision::numerator(c);
        // p^e
        Rational f = 1;
        Int ae = e < 0 ? Int(-e) : e;
        for (Int i = 0; i < ae; ++i) f *= Rational(*p);
        result *= e < 0 ? Rational(1) / f : f;
    }
    Int half_turns = 0;
    for (const auto& [m, c] : mu.im().terms()) {
        if (!is_pi_monomial(m) || !is_integer(c)) return std::nullopt;
        half_turns += boost::multiprecision::numerator(c);
    }
    if (half_turns % 2 != 0) result = -result;
    return CNumber(SymScalar(result), SymScalar());
}

std::optional<CNumber> exact_log(const CNumber& mu, long branch) {
    if (!mu.is_exact() || mu.is_zero_exact()) return std::nullopt;
    if (mu.is_rational()) {
        Rational x = mu.re().rational_value();
        if (x > 0) return CNumber(log_rational(x), pi_times(Rational(2 * branch)));
        return CNumber(log_rational(-x), pi_times(Rational(2 * branch + 1)));
    }
    if (mu.re().is_zero() && mu.im().is_rational()) {
        Rational y = mu.im().rational_value();
        Rational arg = y > 0 ? Rational(1, 2) : Rational(-1, 2);
        return CNumber(log_rational(y > 0 ? y : Rational(-y)),
                       pi_times(arg + Rational(2 * branch)));
    }
    return std::nullopt;
}

CMatrix exp_k(const CMatrix& n, const Partition& partition) {
    if (!k_membership(n, partition, 1e-9, false))
        throw MembershipError("exp_k: input is not in K_{eta,r}");
    CMatrix out(n.rows(), n.cols());
    for (const auto& span : block_spans(partition)) {
        const std::size_t m = span.end - span.begin;
        CMatrix blk = block_of(n, span);
        CNumber mu = blk.at(0, 0);
        CMatrix nil = blk;
        for (std::size_t i = 0; i < m; ++i) nil.at(i, i) = nil.at(i, i) - mu;
        // finite series sum nil^j / j!
        CMatrix series = CMatrix::identity(m);
        CMatrix power = CMatrix::identity(m);
        Rational fact = 1;
        for (std::size_t j = 1; j < m; ++j) {
            power = power * nil;
            fact *= Rational(static_cast<unsigned>(j));
            series = series + power.scale(CNumber(Rational(1) / fact));
        }
        CNumber emu;
        if (auto e = exact_exp(mu)) {
            emu = *e;
        } else {
            emu = CNumber::from_double(std::exp(mu.approx()));
        }
        place_block(out, series.scale(emu), span);
    }
    return out;
}

CMatrix log_k(const CMatrix& m, const Partition& partition, const std::vector<long>& branches) {
    if (!k_membership(m, partition, 1e-9, true))
        throw MembershipError("log_k: input is not in K*_{eta,r}");
    std::vector<long> br = branches;
    if (br.empty()) br.assign(partition.r(), 0);
    if (br.size() != partition.r())
        throw BranchError("log_k: branch list length != number of blocks");
    CMatrix out(m.rows(), m.cols());
    std::size_t bi = 0;
    for (const auto& span : block_spans(partition)) {
        const std::size_t sz = span.end - span.begin;
        CMatrix blk = block_of(m, span);
        CNumber mu = blk.at(0, 0);
        long branch = br[bi++];

        CNumber lam;
        if (auto l = exact_log(mu, branch)) {
            lam = *l;
        } else {
            std::complex<double> z = std::log(mu.approx());
            lam = CNumber::from_double({z.real(), z.imag() + kTwoPi * static_cast<double>(branch)});
        }

        // E = blk/mu - I, strictly lower triangular; log series is finite
        CNumber muinv;
        CMatrix e(sz, sz);
        if (mu.try_invert(muinv)) {
            e = blk.scale(muinv);
        } else {
            std::complex<double> zi = 1.0 / mu.approx();
            CMatrix scaled(sz, sz);
            for (std::size_t i = 0; i < sz; ++i)
                for (std::size_t j = 0; j < sz; ++j)
                    scaled.at(i, j) = CNumber::from_double(blk.at(i, j).approx() * zi);
            e = scaled;
        }
        for (std::size_t i = 0; i < sz; ++i) e.at(i, i) = e.at(i, i) - CNumber(Rational(1));

        CMatrix series(sz, sz);
        CMatrix power = CMatrix::identity(sz);
        for (std::size_t j = 1; j < sz; ++j) {
            power = power * e;
            Rational coeff = Rational(j % 2 ? 1 : -1, static_cast<unsigned>(j));
            series = series + power.scale(CNumber(coeff));
        }
        for (std::size_t i = 0; i < sz; ++i) series.at(i, i) = series.at(i, i) + lam;
        place_block(out, series, span);
    }
    return out;
}

PsiAdjustResult psi_adjust(const CMatrix& n, double tol) {
    if (n.rows() != n.cols() || n.rows() == 0)
        throw DimensionMismatch("psi_adjust: square matrix required");
    const CNumber& corner = n.at(0, 0);
    long k = 0;
    double scaled = tol * (1 + n.max_abs());
    if (corner.is_exact()) {
        if (!corner.re().is_zero())
            throw BranchError("psi_adjust: (1,1) entry has a nonzero real part");
        bool ok = true;
        Rational turns = 0;
        for (const auto& [m, c] : corner.im().terms())
            if (is_pi_monomial(m)) turns += c; else ok = false;
        Rational half = turns / Rational(2);
        if (!ok || !is_integer(half))
            throw BranchError("psi_adjust: (1,1) entry is not an integer multiple of 2*pi*i");
        k = boost::multiprecision::numerator(half).convert_to<long>();
    } else {
        std::complex<double> z = corner.approx();
        double raw = z.imag() / kTwoPi;
        k = std::lround(raw);
        if (std::abs(z.real()) > scaled || std::abs(z.imag() - kTwoPi * k) > scaled)
            throw BranchError("psi_adjust: (1,1) entry is not an integer multiple of 2*pi*i");
    }
    CMatrix out = n;
    CNumber shift(SymScalar(), pi_times(Rational(2 * k)));
    for (std::size_t i = 0; i < n.rows(); ++i) out.at(i, i) = out.at(i, i) - shift;
    // the corrected matrix must lie in Psi(MA): zero first row
    for (std::size_t j = 0; j < n.cols(); ++j) {
        const CNumber& x = out.at(0, j);
        if (x.is_exact() ? !x.is_zero_exact() : std::abs(x.approx()) > scaled)
            throw BranchError("psi_adjust: first row does not vanish after the shift");
        out.at(0, j) = CNumber();
    }
    PsiAdjustResult r;
    r.matrix = std::move(out);
    r.shift = k;
    return r;
}

LogWitness log_witness(const AffineMap& f, const NormalForm& nf, const std::vector<long>& branches) {
    CMatrix conj = nf.Pinv * phi(f) * nf.P;
    CMatrix lg = log_k(conj, nf.partition, branches);
    CMatrix back = nf.P * lg * nf.Pinv;
    PsiAdjustResult adj = psi_adjust(back);
    LogWitness w;
    w.f = f;
    w.fprime = psi_inv(adj.matrix);
    w.branch_shifts = branches.empty() ? std::vector<long>(nf.partition.r(), 0) : branches;
    w.psi_shift = adj.shift;
    double scale = 1 + phi(f).max_abs();
    double dev = witness_deviation(f, w.fprime);
    if (dev > 1e-9 * scale)
        throw NumericalFailure("log witness verification failed: max deviation " +
                               std::to_string(dev));
    return w;
}

double witness_deviation(const AffineMap& f, const AffineMap& fprime) {
    CMatrix target = phi(f);
    CMatrix arg = psi(fprime);
    const auto n = static_cast<Eigen::Index>(arg.rows());
    Eigen::MatrixXcd e(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            e(i, j) = arg.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).approx();
    Eigen::MatrixXcd ex = e.exp();
    double dev = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            dev = std::max(dev, std::abs(ex(i, j) -
                                         target.at(static_cast<std::size_t>(i),
                                                   static_cast<std::size_t>(j)).approx()));
    return dev;
}

}  // namespace hyperaff
