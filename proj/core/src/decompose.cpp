#include "heraldiq/decompose.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heraldiq {

namespace {

constexpr double kPi = std::numbers::pi;

struct Schedule {
    // (row, col, n) per step; cells act on modes (n, n+1)
    struct Step {
        int row, col, n;
    };
    std::vector<Step> right;  // U <- U · C†
    std::vector<Step> left;   // U <- C · U
};

// Diagonal-by-diagonal nulling order of the rectangular decomposition.
Schedule clements_schedule(int m) {
    Schedule s;
    for (int l = 1; l < m; ++l) {
        if (l % 2 == 1) {
            for (int k = 0; k < l; ++k) {
                s.right.push_back({m - 1 - k, l - 1 - k, l - 1 - k});
            }
        } else {
            for (int k = 1; k <= l; ++k) {
                s.left.push_back({m + k - l - 1, k - 1, m + k - l - 2});
            }
        }
    }
    return s;
}

struct CellAngles {
    double theta, phi;
};

void apply_cell_left(Matrix& u, int n, double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex i(0.0, 1.0);
    const Complex eip = std::exp(Complex(0.0, phi));
    const Eigen::RowVectorXcd rn = u.row(n);
    const Eigen::RowVectorXcd rn1 = u.row(n + 1);
    u.row(n) = c * eip * rn + i * s * rn1;
    u.row(n + 1) = i * s * eip * rn + c * rn1;
}

void apply_cell_dagger_right(Matrix& u, int n, double theta, double phi) {
    // C† = [[c e^{−iφ}, −i s e^{−iφ}], [−i s, c]]
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex i(0.0, 1.0);
    const Complex emip = std::exp(Complex(0.0, -phi));
    const Eigen::VectorXcd cn = u.col(n);
    const Eigen::VectorXcd cn1 = u.col(n + 1);
    u.col(n) = cn * (c * emip) + cn1 * (-i * s);
    u.col(n + 1) = cn * (-i * s * emip) + cn1 * c;
}

}  // namespace

MeshLayout MeshLayout::rectangular(int modes) {
    if (modes < 1) throw std::invalid_argument("MeshLayout: need modes >= 1");
    const Schedule sched = clements_schedule(modes);
    MeshLayout layout;
    layout.modes = modes;
    for (const auto& st : sched.right) layout.cells.emplace_back(st.n, st.n + 1);
    for (auto it = sched.left.rbegin(); it != sched.left.rend(); ++it) {
        layout.cells.emplace_back(it->n, it->n + 1);
    }
    return layout;
}

Matrix mesh_unitary(const MeshLayout& layout, const std::vector<double>& params) {
    if (static_cast<int>(params.size()) != layout.parameter_count()) {
        throw std::invalid_argument("mesh_unitary: wrong parameter count");
    }
    Matrix u = Matrix::Identity(layout.modes, layout.modes);
    std::size_t p = 0;
    for (const auto& [n, n1] : layout.cells) {
        (void)n1;
        const double theta = params[p++];
        const double phi = params[p++];
        apply_cell_left(u, n, theta, phi);
    }
    for (int j = 0; j < layout.modes; ++j) {
        u.row(j) *= std::exp(Complex(0.0, params[p++]));
    }
    return u;
}

Circuit mesh_circuit(const MeshLayout& layout, const std::vector<double>& params) {
    if (static_cast<int>(params.size()) != layout.parameter_count()) {
        throw std::invalid_argument("mesh_circuit: wrong parameter count");
    }
    Circuit c;
    c.modes = layout.modes;
    std::size_t p = 0;
    for (const auto& [n, n1] : layout.cells) {
        const double theta = params[p++];
        const double phi = params[p++];
        c.phase(n, phi);
        c.bs(n, n1, theta, 0.0);
    }
    for (int j = 0; j < layout.modes; ++j) {
        c.phase(j, params[p++]);
    }
    return c;
}

std::vector<double> mesh_params_from_unitary(const MeshLayout& layout, const Matrix& u,
                                             double tolerance) {
    const int m = layout.modes;
    if (u.rows() != m || u.cols() != m) {
        throw std::invalid_argument("mesh_params_from_unitary: matrix size mismatch");
    }
    if (verify_unitarity(u) > tolerance) {
        throw std::invalid_argument("mesh_params_from_unitary: input is not unitary");
    }
    const Schedule sched = clements_schedule(m);

    Matrix w = u;
    std::vector<CellAngles> right_cells;
    std::vector<CellAngles> left_cells;
    right_cells.reserve(sched.right.size());
    left_cells.reserve(sched.left.size());

    std::size_t ri = 0, li = 0;
    // interleave right/left phases in the diagonal order they were scheduled
    for (int l = 1; l < m; ++l) {
        if (l % 2 == 1) {
            for (int k = 0; k < l; ++k, ++ri) {
                const auto& st = sched.right[ri];
                const Complex x = w(st.row, st.col);
                const Complex y = w(st.row, st.col + 1);
                const double theta = std::atan2(std::abs(x), std::abs(y));
                const double phi = std::arg(x) - std::arg(y) - kPi / 2.0;
                apply_cell_dagger_right(w, st.n, theta, phi);
                right_cells.push_back({theta, phi});
            }
        } else {
            for (int k = 1; k <= l; ++k, ++li) {
                const auto& st = sched.left[li];
                const Complex x = w(st.row - 1, st.col);
                const Complex y = w(st.row, st.col);
                const double theta = std::atan2(std::abs(y), std::abs(x));
                const double phi = std::arg(y) - std::arg(x) + kPi / 2.0;
                apply_cell_left(w, st.n, theta, phi);
                left_cells.push_back({theta, phi});
            }
        }
    }

    // w is now diagonal: C_lp···C_l1 · u · C_r1†···C_rq† = D
    std::vector<double> diag(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) diag[static_cast<std::size_t>(j)] = std::arg(w(j, j));

    // Push the daggered left cells through the diagonal:
    //   C†(θ,φ)·diag(α at n, β at n+1) = diag(β−φ−π at n, β at n+1)·C(θ, α−β−π)
    // processed from the innermost (last applied) left cell outward.
    std::vector<CellAngles> b_cells(left_cells.size());
    for (std::size_t idx = left_cells.size(); idx-- > 0;) {
        const int n = sched.left[idx].n;
        const double theta = left_cells[idx].theta;
        const double phi = left_cells[idx].phi;
        const double alpha = diag[static_cast<std::size_t>(n)];
        const double beta = diag[static_cast<std::size_t>(n) + 1];
        diag[static_cast<std::size_t>(n)] = beta - phi - kPi;
        b_cells[idx] = {theta, alpha - beta - kPi};
    }

    // Emit in layout order: right cells, then left-derived cells reversed.
    std::vector<double> params;
    params.reserve(static_cast<std::size_t>(layout.parameter_count()));
    for (const auto& cell : right_cells) {
        params.push_back(cell.theta);
        params.push_back(cell.phi);
    }
    for (auto it = b_cells.rbegin(); it != b_cells.rend(); ++it) {
        params.push_back(it->theta);
        params.push_back(it->phi);
    }
    for (double d : diag) params.push_back(d);
    return params;
}

Circuit decompose(const Matrix& u, double tolerance) {
    const MeshLayout layout = MeshLayout::rectangular(static_cast<int>(u.rows()));
    return mesh_circuit(layout, mesh_params_from_unitary(layout, u, tolerance));
}

}  // namespace heraldiq
