#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "heraldiq/state.hpp"

namespace heraldiq {

using Matrix = Eigen::MatrixXcd;

/// Two-mode beam splitter with mixing angle θ and phase φ:
///
///   U(θ,φ) = [ cosθ            i e^{−iφ} sinθ ]
///            [ i e^{iφ} sinθ   cosθ           ]
///
/// acting on (i, j). 50:50 means θ = π/4, φ = 0.
struct BeamSplitter {
    int i = 0, j = 1;
    double theta = 0.0;
    double phi = 0.0;
};

struct PhaseShift {
    int mode = 0;
    double phi = 0.0;
};

struct Swap {
    int i = 0, j = 1;
};

/// Discrete Fourier transform over a contiguous or arbitrary mode range,
/// entries ω^{jk}/√m with ω = exp(2πi/m).
struct DftBlock {
    std::vector<int> modes;
};

/// Arbitrary unitary block embedded on the listed modes.
struct UnitaryBlock {
    std::vector<int> modes;
    Matrix matrix;
};

using Element = std::variant<BeamSplitter, PhaseShift, Swap, DftBlock, UnitaryBlock>;

/// Ordered list of optical elements over m modes; earlier elements act first.
struct Circuit {
    int modes = 0;
    std::vector<Element> elements;

    Circuit& bs(int i, int j, double theta, double phi = 0.0);
    Circuit& phase(int mode, double phi);
    Circuit& swap(int i, int j);
    Circuit& dft(const std::vector<int>& modes);
    Circuit& block(const std::vector<int>& modes, Matrix u);
    Circuit& append(const Circuit& other);
};

/// m×m unitary of the DFT: U_jk = ω^{jk}/√m.
Matrix dft_matrix(int m);

/// Beam splitter 2×2 under the project convention.
Eigen::Matrix2cd beam_splitter_matrix(double theta, double phi);

/// max |(U†U − I)_{jk}|.
double verify_unitarity(const Matrix& u);

/// Left-multiplies element unitaries in order (earlier elements act first).
/// Throws if an element carries a non-unitary block or an out-of-range index.
Matrix compile(const Circuit& c, double tolerance = 1e-10);

/// Full m×m matrix of a single element.
Matrix element_matrix(const Element& e, int modes, double tolerance = 1e-10);

}  // namespace heraldiq
