#include "hyperaff/normal_form.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

namespace hyperaff {

namespace {

bool entry_zero(const CNumber& x, double tol) {
    return x.is_exact() ? x.is_zero_exact() : std::abs(x.approx()) <= tol;
}

bool entry_equal(const CNumber& a, const CNumber& b, double tol) {
    if (a.is_exact() && b.is_exact()) return a == b;
    return std::abs(a.approx() - b.approx()) <= tol;
}

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m.at(i, j).approx();
    return e;
}

Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& a, double rel_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cutoff = rel_tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    // kernel dimension is cols - rank (sv lists only min(rows, cols) values)
    return svd.matrixV().rightCols(a.cols() - rank);
}

Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& b) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(b);
    return Eigen::MatrixXcd(qr.householderQ()).leftCols(b.cols());
}

std::vector<Eigen::MatrixXcd> restrict_family(const std::vector<Eigen::MatrixXcd>& amb,
                                              const Eigen::MatrixXcd& basis) {
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(amb.size());
    for (const auto& a : amb) out.push_back(basis.adjoint() * a * basis);
    return out;
}

std::vector<std::vector<std::complex<double>>> cluster_eigenvalues(
    const Eigen::VectorXcd& ev, double eig_tol) {
    std::vector<std::complex<double>> vals(ev.data(), ev.data() + ev.size());
    std::sort(vals.begin(), vals.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<std::vector<std::complex<double>>> clusters;
    for (const auto& v : vals) {
        bool placed = false;
        for (auto& c : clusters)
            if (std::abs(c.front() - v) <= eig_tol * std::max(1.0, std::abs(v))) {
                c.push_back(v);
                placed = true;
                break;
            }
        if (!placed) clusters.push_back({v});
    }
    return clusters;
}

/// Recursively splits span(basis) into the joint generalized eigenspace
/// classes of the commuting family.
void split_into_classes(const std::vector<Eigen::MatrixXcd>& amb, const Eigen::MatrixXcd& basis,
                        const NormalFormOptions& opts, std::vector<Eigen::MatrixXcd>& out) {
    const Eigen::Index dim = basis.cols();
    if (dim == 0) return;
    auto mats = restrict_family(amb, basis);
    for (const auto& mat : mats) {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(mat, false);
        auto clusters = cluster_eigenvalues(es.eigenvalues(), opts.eig_tol);
        if (clusters.size() < 2) continue;
        Eigen::Index covered = 0;
        for (const auto& cluster : clusters) {
            // generalized eigenspace: kernel of the product over the cluster
            Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(dim, dim);
            double scale = std::max(1.0, mat.norm());
            for (const auto& lam : cluster)
                prod = prod * ((mat - lam * Eigen::MatrixXcd::Identity(dim, dim)) / scale);
            Eigen::MatrixXcd ker = kernel_basis(prod, 1e-6);
            if (ker.cols() != static_cast<Eigen::Index>(cluster.size()))
                throw NumericalFailure(
                    "eigenvalue clustering ambiguous: generalized eigenspace dimension " +
                    std::to_string(ker.cols()) + " != cluster multiplicity " +
                    std::to_string(cluster.size()));
            covered += ker.cols();
            split_into_classes(amb, orthonormalize(basis * ker), opts, out);
        }
        if (covered != dim)
            throw NumericalFailure("generalized eigenspaces do not fill the space");
        return;
    }
    out.push_back(basis);  // no generator splits: a joint class
}

/// Lower-triangular ordering basis for a single-joint-character invariant
/// subspace: returns ambient columns (w_1..w_m) with A w_j in span(w_j..w_m).
Eigen::MatrixXcd triangular_basis(const std::vector<Eigen::MatrixXcd>& amb,
                                  const Eigen::MatrixXcd& basis) {
    const Eigen::Index m = basis.cols();
    if (m <= 1) return basis;
    auto mats = restrict_family(amb, basis);
    // common eigenvector: smallest singular vector of the stacked shifted family
    Eigen::MatrixXcd stacked(m * static_cast<Eigen::Index>(mats.size()), m);
    for (std::size_t g = 0; g < mats.size(); ++g) {
        std::complex<double> mu = mats[g].trace() / static_cast<double>(m);
        stacked.middleRows(static_cast<Eigen::Index>(g) * m, m) =
            mats[g] - mu * Eigen::MatrixXcd::Identity(m, m);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
    Eigen::VectorXcd v_local = svd.matrixV().col(m - 1);
    // orthonormal complement of v_local inside the subspace coordinates
    Eigen::MatrixXcd ext(m, m);
    ext.col(0) = v_local;
    ext.rightCols(m - 1).setZero();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ext);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd complement = basis * q.rightCols(m - 1);
    Eigen::MatrixXcd head = triangular_basis(amb, complement);
    Eigen::MatrixXcd out(basis.rows(), m);
    out.leftCols(m - 1) = head;
    out.col(m - 1) = basis * v_local;
    return out;
}

CVector p2(const CVector& v) { return CVector(v.begin() + 1, v.end()); }

NormalForm assemble(const std::vector<AffineMap>& fs, CMatrix P, CMatrix Pinv,
                    Partition partition, double tol) {
    NormalForm nf;
    nf.partition = std::move(partition);
    nf.u0 = u0_vector(nf.partition);
    nf.v0 = P.apply(nf.u0);
    nf.w0 = p2(nf.v0);
    nf.varphi = phi_inv(P, tol);
    nf.P = std::move(P);
    nf.Pinv = std::move(Pinv);
    (void)fs;
    return nf;
}

}  // namespace

CVector basis_vector_e(std::size_t k, const Partition& partition) {
    if (k < 1 || k > partition.r()) throw DimensionMismatch("basis_vector_e: block index out of range");
    CVector v(partition.total());
    std::size_t off = 0;
    for (std::size_t b = 0; b + 1 < k; ++b) off += partition.eta[b];
    v[off] = CNumber(Rational(1));
    return v;
}

CVector u0_vector(const Partition& partition) {
    CVector v(partition.total());
    std::size_t off = 0;
    for (std::size_t b = 0; b < partition.r(); ++b) {
        v[off] = CNumber(Rational(1));
        off += partition.eta[b];
    }
    return v;
}

bool k_membership(const CMatrix& m, const Partition& partition, double tol, bool star) {
    if (m.rows() != m.cols() || m.rows() != partition.total()) return false;
    double scaled = tol * (1 + m.max_abs());
    std::size_t off = 0;
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (auto nk : partition.eta) {
        blocks.emplace_back(off, off + nk);
        off += nk;
    }
    auto block_of = [&](std::size_t i) {
        for (std::size_t b = 0; b < blocks.size(); ++b)
            if (i >= blocks[b].first && i < blocks[b].second) return b;
        return blocks.size();
    };
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i == j) continue;
            bool inside = block_of(i) == block_of(j);
            if ((!inside || i < j) && !entry_zero(m.at(i, j), scaled)) return false;
        }
    for (const auto& [a, b] : blocks) {
        for (std::size_t i = a + 1; i < b; ++i)
            if (!entry_equal(m.at(a, a), m.at(i, i), scaled)) return false;
        if (star) {
            const CNumber& mu = m.at(a, a);
            if (mu.is_exact() ? mu.is_zero_exact() : std::abs(mu.approx()) <= scaled)
                return false;
        }
    }
    return true;
}

std::optional<Partition> scan_partition(const std::vector<CMatrix>& ms, double tol) {
    if (ms.empty()) return std::nullopt;
    const std::size_t n = ms[0].rows();
    for (const auto& m : ms)
        if (m.rows() != n || m.cols() != n) return std::nullopt;

    // globally lower triangular?
    for (const auto& m : ms) {
        double scaled = tol * (1 + m.max_abs());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!entry_zero(m.at(i, j), scaled)) return std::nullopt;
    }
    // finest cut set: cut before index c iff nothing couples [0,c) and [c,n)
    std::vector<std::size_t> cuts{0};
    for (std::size_t c = 1; c < n; ++c) {
        bool ok = true;
        for (const auto& m : ms) {
            double scaled = tol * (1 + m.max_abs());
            for (std::size_t i = c; ok && i < n; ++i)
                for (std::size_t j = 0; ok && j < c; ++j)
                    if (!entry_zero(m.at(i, j), scaled)) ok = false;
        }
        if (ok) cuts.push_back(c);
    }
    cuts.push_back(n);
    Partition p;
    for (std::size_t b = 0; b + 1 < cuts.size(); ++b) p.eta.push_back(cuts[b + 1] - cuts[b]);
    for (const auto& m : ms)
        if (!k_membership(m, p, tol, false)) return std::nullopt;
    return p;
}

NormalForm find_normal_form(const std::vector<AffineMap>& fs, const NormalFormOptions& opts) {
    if (fs.empty()) throw DimensionMismatch("find_normal_form: empty family");
    auto ab = check_abelian(fs, opts.zero_tol);
    if (!ab.abelian) throw NotAbelianError(ab.first, ab.second);
    for (std::size_t k = 0; k < fs.size(); ++k)
        if (!is_invertible(fs[k])) throw NotInvertibleError(k);

    std::vector<CMatrix> ms;
    ms.reserve(fs.size());
    for (const auto& f : fs) ms.push_back(phi(f));
    const std::size_t m = ms[0].rows();

    if (auto p = scan_partition(ms, opts.zero_tol))
        return assemble(fs, CMatrix::identity(m), CMatrix::identity(m), *p, opts.zero_tol);

    // float path: joint class decomposition + simultaneous triangularization
    std::vector<Eigen::MatrixXcd> amb;
    amb.reserve(ms.size());
    for (const auto& mm : ms) amb.push_back(to_eigen(mm));

    std::vector<Eigen::MatrixXcd> classes;
    split_into_classes(amb, Eigen::MatrixXcd::Identity(m, m), opts, classes);

    // locate the class containing the homogenizing direction (first row
    // functional); all other classes lie in {x1 = 0}
    std::size_t main_idx = classes.size();
    double best = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        double w = classes[c].row(0).norm();
        if (w > best) { best = w; main_idx = c; }
    }
    if (main_idx == classes.size() || best < 1e-8)
        throw NumericalFailure("no class carries the homogenizing direction");

    const Eigen::MatrixXcd& mainb = classes[main_idx];
    const Eigen::Index md = mainb.cols();
    // v*: element of the class with first coordinate 1
    Eigen::RowVectorXcd row0 = mainb.row(0);
    Eigen::VectorXcd c0 = row0.adjoint() / row0.squaredNorm();
    Eigen::VectorXcd vstar = mainb * c0;
    // the rest of the class inside {x1 = 0}
    Eigen::MatrixXcd inW = kernel_basis(Eigen::MatrixXcd(row0), 1e-12);
    if (inW.cols() != md - 1)
        throw NumericalFailure("main class does not split along the hyperplane x1 = 0");
    Eigen::MatrixXcd block1(m, md);
    block1.col(0) = vstar;
    if (md > 1)
        block1.rightCols(md - 1) = triangular_basis(amb, orthonormalize(mainb * inW));

    // order remaining classes: descending size, then first generator character
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (c != main_idx) order.push_back(c);
    auto char0 = [&](std::size_t c) {
        Eigen::MatrixXcd r = classes[c].adjoint() * amb[0] * classes[c];
        return r.trace() / static_cast<double>(classes[c].cols());
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (classes[a].cols() != classes[b].cols()) return classes[a].cols() > classes[b].cols();
        auto ca = char0(a), cb = char0(b);
        return ca.real() != cb.real() ? ca.real() < cb.real() : ca.imag() < cb.imag();
    });

    Eigen::MatrixXcd cols(m, m);
    cols.leftCols(md) = block1;
    Eigen::Index at = md;
    for (auto c : order) {
        Eigen::Index w = classes[c].cols();
        cols.middleCols(at, w) = triangular_basis(amb, classes[c]);
        at += w;
    }
    if (at != static_cast<Eigen::Index>(m)) throw NumericalFailure("class dimensions inconsistent");

    // force P into Phi(GA): column 1 has first coordinate exactly 1, other
    // columns exactly 0 (they are already ~0 by construction)
    for (Eigen::Index j = 1; j < static_cast<Eigen::Index>(m); ++j)
        cols.col(j) -= cols(0, j) * cols.col(0);
    CMatrix P(m, m);
    P.at(0, 0) = CNumber(Rational(1));
    for (std::size_t j = 1; j < m; ++j) P.at(0, j) = CNumber();
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            P.at(i, j) = CNumber::from_double(cols(static_cast<Eigen::Index>(i),
                                                   static_cast<Eigen::Index>(j)));
    CMatrix Pinv = float_inverse(P);

    std::vector<CMatrix> conj;
    conj.reserve(ms.size());
    for (const auto& mm : ms) conj.push_back(Pinv * mm * P);
    auto p = scan_partition(conj, opts.zero_tol * 10);
    if (!p) throw NumericalFailure("conjugated family failed cone membership verification");
    return assemble(fs, std::move(P), std::move(Pinv), *p, opts.zero_tol);
}

NormalForm trusted_normal_form(const std::vector<AffineMap>& fs, const CMatrix& P,
                               const Partition& partition, const NormalFormOptions& opts) {
    if (!is_phi_image(P, opts.zero_tol))
        throw MembershipError("trusted normal form: P is not a Phi-image");
    CMatrix Pinv;
    if (!try_exact_inverse(P, Pinv)) Pinv = float_inverse(P);
    for (const auto& f : fs) {
        CMatrix conj = Pinv * phi(f) * P;
        if (!k_membership(conj, partition, opts.zero_tol, true))
            throw NumericalFailure(
                "trusted normal form rejected: conjugated generator leaves K*");
    }
    return assemble(fs, P, Pinv, partition, opts.zero_tol);
}

}  // namespace hyperaff
