#include "expmc/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace expmc {

namespace {

using EMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EMap = Eigen::Map<EMatrix>;
using ECMap = Eigen::Map<const EMatrix>;
using EVector = Eigen::VectorXd;

ECMap as_eigen(const DenseMatrix& a) {
    return ECMap(a.data(), static_cast<Eigen::Index>(a.size()),
                 static_cast<Eigen::Index>(a.size()));
}

void check_cap(std::size_t n, const char* where) {
    const std::size_t cap = oracle_cap();
    if (n > cap) {
        throw std::invalid_argument(std::string(where) + ": n = " +
                                    std::to_string(n) +
                                    " exceeds the dense oracle cap " +
                                    std::to_string(cap));
    }
}

// Degree-13 Pade numerator coefficients (Higham 2005).
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

EMatrix expm_impl(const EMatrix& a) {
    const Eigen::Index n = a.rows();
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > kTheta13) {
        squarings = static_cast<int>(
            std::ceil(std::log2(norm1 / kTheta13)));
    }
    const EMatrix as = a / std::pow(2.0, squarings);

    const EMatrix a2 = as * as;
    const EMatrix a4 = a2 * a2;
    const EMatrix a6 = a2 * a4;
    const EMatrix ident = EMatrix::Identity(n, n);

    const EMatrix u =
        as * (a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2) +
              kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 +
              kPade13[1] * ident);
    const EMatrix v =
        a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2) +
        kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 +
        kPade13[0] * ident;

    EMatrix f = (v - u).partialPivLu().solve(v + u);
    for (int s = 0; s < squarings; ++s) f = f * f;
    if (!f.allFinite()) {
        throw std::overflow_error("dense_expm: result overflows");
    }
    return f;
}

double vector_norm(std::span<const double> x, ErrorNorm norm) {
    double acc = 0.0;
    for (const double v : x) {
        acc = norm == ErrorNorm::LInf ? std::max(acc, std::abs(v))
                                      : acc + std::abs(v);
    }
    return acc;
}

}  // namespace

DenseMatrix DenseMatrix::from_sparse(const SparseSymmetric& a) {
    DenseMatrix out(a.size());
    for (const auto& e : a.entries()) {
        out.at(e.row, e.col) = e.weight;
        out.at(e.col, e.row) = e.weight;
    }
    return out;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) out.at(i, i) = 1.0;
    return out;
}

DenseMatrix DenseMatrix::laplacian(const SplitMatrix& m) {
    DenseMatrix out(m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        out.at(i, i) = m.rate[i];
        const auto nbrs = m.row_neighbors(static_cast<NodeId>(i));
        const auto ws = m.row_weights(static_cast<NodeId>(i));
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            out.at(i, nbrs[k]) = -ws[k];
        }
    }
    return out;
}

DenseMatrix DenseMatrix::full(const SplitMatrix& m) {
    DenseMatrix out(m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        out.at(i, i) = m.diag[i];
        const auto nbrs = m.row_neighbors(static_cast<NodeId>(i));
        const auto ws = m.row_weights(static_cast<NodeId>(i));
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            out.at(i, nbrs[k]) = ws[k];
        }
    }
    return out;
}

std::vector<double> DenseMatrix::apply(std::span<const double> v) const {
    if (v.size() != n_) {
        throw std::invalid_argument("apply: length mismatch");
    }
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        const double* row = data_.data() + i * n_;
        for (std::size_t j = 0; j < n_; ++j) acc += row[j] * v[j];
        y[i] = acc;
    }
    return y;
}

DenseMatrix DenseMatrix::scaled(double s) const {
    DenseMatrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
}

std::size_t oracle_cap() {
    if (const char* env = std::getenv("EXPMC_ORACLE_CAP")) {
        char* end = nullptr;
        const unsigned long long cap = std::strtoull(env, &end, 10);
        if (end != env && cap > 0) return static_cast<std::size_t>(cap);
    }
    return 2000;
}

DenseMatrix dense_expm(const DenseMatrix& a) {
    check_cap(a.size(), "dense_expm");
    const EMatrix f = expm_impl(EMatrix(as_eigen(a)));
    DenseMatrix out(a.size());
    EMap(out.data(), f.rows(), f.cols()) = f;
    return out;
}

std::vector<double> dense_expm_action(const SplitMatrix& m,
                                      std::span<const double> v, double beta) {
    check_cap(m.n, "dense_expm_action");
    const DenseMatrix e = dense_expm(DenseMatrix::full(m).scaled(beta));
    return e.apply(v);
}

std::vector<double> splitting_product(const SplitMatrix& m,
                                      std::span<const double> v,
                                      const PathParams& p) {
    check_cap(m.n, "splitting_product");
    p.validate();
    if (v.size() != m.n) {
        throw std::invalid_argument("splitting_product: length mismatch");
    }
    const double dt = p.dt();
    const DenseMatrix pmat =
        dense_expm(DenseMatrix::laplacian(m).scaled(-dt));
    const auto pn = static_cast<Eigen::Index>(m.n);
    ECMap pe(pmat.data(), pn, pn);

    EVector x(pn);
    for (std::size_t i = 0; i < m.n; ++i) x[static_cast<Eigen::Index>(i)] = v[i];
    EVector dhalf(pn), dfull(pn);
    for (std::size_t i = 0; i < m.n; ++i) {
        dhalf[static_cast<Eigen::Index>(i)] = std::exp(dt * m.d[i] / 2.0);
        dfull[static_cast<Eigen::Index>(i)] = std::exp(dt * m.d[i]);
    }

    for (std::size_t k = 0; k < p.n_steps; ++k) {
        if (p.splitting == Splitting::Strang) {
            x = dhalf.cwiseProduct(x);
            x = pe * x;
            x = dhalf.cwiseProduct(x);
        } else {
            x = dfull.cwiseProduct(x);
            x = pe * x;
        }
    }
    return {x.data(), x.data() + pn};
}

CommutatorBounds commutator_bounds(const SplitMatrix& m, double dt,
                                   std::span<const double> v) {
    check_cap(m.n, "commutator_bounds");
    if (v.size() != m.n) {
        throw std::invalid_argument("commutator_bounds: length mismatch");
    }
    const auto n = static_cast<Eigen::Index>(m.n);
    const DenseMatrix lm = DenseMatrix::laplacian(m);
    ECMap l(lm.data(), n, n);
    EVector dvec(n);
    for (std::size_t i = 0; i < m.n; ++i) {
        dvec[static_cast<Eigen::Index>(i)] = m.d[i];
    }
    const EMatrix d = dvec.asDiagonal();
    ECMap ve(v.data(), n, 1);

    const EMatrix dl_ld = d * l - l * d;  // [D, L]
    const EMatrix dd = d * dl_ld - dl_ld * d;  // [D, [D, L]]
    const EMatrix ld_dl = -dl_ld;              // [L, D]
    const EMatrix ll = l * ld_dl - ld_dl * l;  // [L, [L, D]]

    CommutatorBounds out;
    out.lie_local = ((dt * dt / 2.0) * (dl_ld * ve)).cwiseAbs().maxCoeff();
    out.strang_local =
        (std::pow(dt, 3) * (dd / 12.0 - ll / 24.0) * ve).cwiseAbs().maxCoeff();
    const auto dmax = static_cast<double>(m.dmax);
    out.tc_bound = 2.0 * dmax * dmax * dmax * dt * dt;
    return out;
}

ErrorDecomposition decompose_error(const SplitMatrix& m,
                                   std::span<const double> v,
                                   const PathParams& p,
                                   const VectorEstimate& mc, ErrorNorm norm) {
    check_cap(m.n, "decompose_error");
    if (mc.values.size() != m.n) {
        throw std::invalid_argument("decompose_error: estimate length");
    }
    const std::vector<double> truth = dense_expm_action(m, v, p.beta);
    const std::vector<double> split_vec = splitting_product(m, v, p);

    std::vector<double> diff(m.n);
    for (std::size_t i = 0; i < m.n; ++i) diff[i] = truth[i] - split_vec[i];
    ErrorDecomposition out;
    out.eps_split = vector_norm(diff, norm);
    for (std::size_t i = 0; i < m.n; ++i) {
        diff[i] = split_vec[i] - mc.values[i];
    }
    out.eps_stat = vector_norm(diff, norm);
    out.eps_total = out.eps_split + out.eps_stat;
    const auto dmax = static_cast<double>(m.dmax);
    out.tc_bound = 2.0 * dmax * dmax * dmax * p.dt() * p.dt();
    return out;
}

}  // namespace expmc
