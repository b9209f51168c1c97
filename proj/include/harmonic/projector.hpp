#pragma once

#include "harmonic/extension.hpp"
#include "harmonic/geometry.hpp"
#include "harmonic/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace harmonic {

/// Gram matrix of extended basis fields over one layer domain.  Disk bases
/// are rotation-invariant, so only floor(n/2)+1 unique entries are computed
/// and replicated circulantly; squares store the full symmetric matrix.
struct MassMatrix {
    int size = 0;
    bool circulant = false;
    std::vector<double> unique_values;  // circulant storage, floor(n/2)+1 entries
    Eigen::MatrixXd values;             // expanded matrix (always available)
    DomainSpec domain;                  // the layer it was integrated over
    Eigen::MatrixXd chol;               // lower Cholesky factor (SPD proof)

    double entry(int i, int j) const { return values(i, j); }
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
};

/// Assembles the mass matrix m_ij = (phi_i, phi_j)_{L2(layer)} with the
/// tensor rule aligned to the hat mesh.  Throws if the factorization fails,
/// naming the offending pivot.
MassMatrix assemble_mass(std::span<const HarmonicField> fields, const DomainSpec& layer,
                         const QuadConfig& cfg, bool force_dense = false);

/// L2(layer) projection of a residual onto the basis behind M; returns the
/// coefficient vector solving M c = b with b_i = (residual, phi_i).
Eigen::VectorXd project_layer(const std::function<double(const Vec2&)>& residual,
                              std::span<const HarmonicField> fields, const MassMatrix& M,
                              const QuadConfig& cfg);

enum class ExtensionBackend { Green, Mfs, Trig };

struct ApproxConfig {
    ExtensionBackend backend = ExtensionBackend::Mfs;
    MfsConfig mfs;
    QuadConfig quad;
    std::vector<int> layer_basis_counts;  // empty: n = 2L on every layer
    double green_tol = 1e-10;
};

struct LayerBasis {
    BoundaryBasisSpec spec;
    DomainSpec domain;
    std::vector<HarmonicField> fields;
};

struct ApproximationResult {
    std::vector<LayerBasis> layers;            // s = 1..L
    std::vector<Eigen::VectorXd> layer_coeffs; // c^{(s)}
    int dimension = 0;                         // sum of layer basis counts
    double l2_error_abs = 0.0;                 // ||u - xi_u||_{L2(K)}
    double l2_error_rel = 0.0;                 // relative to ||u||_{L2(D)}
    double norm_u_D = 0.0;
    std::vector<double> per_layer_residual_norms;  // post-projection, on K_s
    bool residual_growth_flag = false;             // any >10% increase between layers
    struct Timings {
        double fit_ms = 0.0;
        double quadrature_ms = 0.0;
        double solve_ms = 0.0;
        double total_ms = 0.0;
    } timings;
};

/// Runs the full layered approximation of u (harmonic on D) on the nested
/// layer system between D and K: per layer, shifted hat bases on the layer
/// boundary are harmonically extended, the running residual is L2-projected
/// onto them, and the final error is measured on K.
ApproximationResult approximate(const std::function<double(const Vec2&)>& u,
                                const DomainSpec& D, const DomainSpec& K, int L,
                                const ApproxConfig& cfg);

/// Value of the assembled approximation at a point of K.
double evaluate_xi(const ApproximationResult& result, const Vec2& p);

}  // namespace harmonic
