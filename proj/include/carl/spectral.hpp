#pragma once

#include <complex>
#include <optional>

#include "carl/matrix.hpp"

namespace carl {

using Complex = std::complex<double>;

struct Mode {
    Complex eigenvalue;
    std::optional<double> frequency_hz; // absent for real modes
    double damping = 0.0;               // fraction; 1.0 for real negative eigenvalues
};

struct SpectrumReport {
    std::vector<Mode> modes;
    std::string source;
};

struct MatchReport {
    double max_distance = 0.0;
    bool pass = false;
    std::vector<std::size_t> assignment; // a[i] matched to b[assignment[i]]
};

/// All eigenvalues of a real square matrix via Hessenberg reduction and
/// Wilkinson-shifted QR iteration (cap 100 iterations per eigenvalue).
/// Conjugate pairs are symmetrized in post-processing.
std::vector<Complex> eigenvalues(const Matrix& a);

/// Frequency |Im|/(2 pi) and damping -Re/|lambda| per eigenvalue.
SpectrumReport mode_report(const std::vector<Complex>& eigs, const std::string& source = "");

/// Multiset of all sums of k eigenvalues with repetition, k = 1..order.
std::vector<Complex> combination_spectrum(const std::vector<Complex>& base, int order);

/// Minimum-cost perfect assignment under |a_i - b_j| cost (Hungarian algorithm).
MatchReport match_spectra(const std::vector<Complex>& a, const std::vector<Complex>& b,
                          double tol);

} // namespace carl
