#include "heraldiq/circuit.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace heraldiq {

namespace {

void check_mode(int mode, int m) {
    if (mode < 0 || mode >= m) throw std::out_of_range("circuit element mode index out of range");
}

void check_distinct(const std::vector<int>& modes, int m) {
    std::set<int> seen;
    for (int mode : modes) {
        check_mode(mode, m);
        if (!seen.insert(mode).second) {
            throw std::invalid_argument("circuit element repeats a mode index");
        }
    }
}

}  // namespace

Circuit& Circuit::bs(int i, int j, double theta, double phi) {
    elements.emplace_back(BeamSplitter{i, j, theta, phi});
    return *this;
}

Circuit& Circuit::phase(int mode, double phi) {
    elements.emplace_back(PhaseShift{mode, phi});
    return *this;
}

Circuit& Circuit::swap(int i, int j) {
    elements.emplace_back(Swap{i, j});
    return *this;
}

Circuit& Circuit::dft(const std::vector<int>& ms) {
    elements.emplace_back(DftBlock{ms});
    return *this;
}

Circuit& Circuit::block(const std::vector<int>& ms, Matrix u) {
    elements.emplace_back(UnitaryBlock{ms, std::move(u)});
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.modes != modes) throw std::invalid_argument("Circuit::append: mode count mismatch");
    elements.insert(elements.end(), other.elements.begin(), other.elements.end());
    return *this;
}

Matrix dft_matrix(int m) {
    if (m < 1) throw std::invalid_argument("dft_matrix: need m >= 1");
    Matrix u(m, m);
    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            const double arg = 2.0 * std::numbers::pi * j * k / m;
            u(j, k) = norm * Complex(std::cos(arg), std::sin(arg));
        }
    }
    return u;
}

Eigen::Matrix2cd beam_splitter_matrix(double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex i(0.0, 1.0);
    Eigen::Matrix2cd u;
    u << c, i * std::exp(Complex(0.0, -phi)) * s,
         i * std::exp(Complex(0.0, phi)) * s, c;
    return u;
}

double verify_unitarity(const Matrix& u) {
    if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
    const Matrix res = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    return res.cwiseAbs().maxCoeff();
}

Matrix element_matrix(const Element& e, int m, double tolerance) {
    Matrix u = Matrix::Identity(m, m);
    if (const auto* bs = std::get_if<BeamSplitter>(&e)) {
        check_distinct({bs->i, bs->j}, m);
        const auto b = beam_splitter_matrix(bs->theta, bs->phi);
        u(bs->i, bs->i) = b(0, 0);
        u(bs->i, bs->j) = b(0, 1);
        u(bs->j, bs->i) = b(1, 0);
        u(bs->j, bs->j) = b(1, 1);
    } else if (const auto* ps = std::get_if<PhaseShift>(&e)) {
        check_mode(ps->mode, m);
        u(ps->mode, ps->mode) = std::exp(Complex(0.0, ps->phi));
    } else if (const auto* sw = std::get_if<Swap>(&e)) {
        check_distinct({sw->i, sw->j}, m);
        u(sw->i, sw->i) = 0.0;
        u(sw->j, sw->j) = 0.0;
        u(sw->i, sw->j) = 1.0;
        u(sw->j, sw->i) = 1.0;
    } else if (const auto* df = std::get_if<DftBlock>(&e)) {
        check_distinct(df->modes, m);
        const Matrix b = dft_matrix(static_cast<int>(df->modes.size()));
        for (std::size_t r = 0; r < df->modes.size(); ++r) {
            for (std::size_t c = 0; c < df->modes.size(); ++c) {
                u(df->modes[r], df->modes[c]) = b(static_cast<int>(r), static_cast<int>(c));
            }
        }
    } else if (const auto* ub = std::get_if<UnitaryBlock>(&e)) {
        check_distinct(ub->modes, m);
        if (ub->matrix.rows() != static_cast<Eigen::Index>(ub->modes.size()) ||
            ub->matrix.cols() != static_cast<Eigen::Index>(ub->modes.size())) {
            throw std::invalid_argument("UnitaryBlock: matrix shape does not match mode list");
        }
        if (verify_unitarity(ub->matrix) > tolerance) {
            throw std::invalid_argument("UnitaryBlock: matrix is not unitary within tolerance");
        }
        for (std::size_t r = 0; r < ub->modes.size(); ++r) {
            for (std::size_t c = 0; c < ub->modes.size(); ++c) {
                u(ub->modes[r], ub->modes[c]) = ub->matrix(static_cast<int>(r), static_cast<int>(c));
            }
        }
    }
    return u;
}

Matrix compile(const Circuit& c, double tolerance) {
    if (c.modes < 1) throw std::invalid_argument("compile: circuit needs at least one mode");
    Matrix u = Matrix::Identity(c.modes, c.modes);
    for (const auto& e : c.elements) {
        u = element_matrix(e, c.modes, tolerance) * u;
    }
    return u;
}

}  // namespace heraldiq
