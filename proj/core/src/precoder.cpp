// SPDX-License-Identifier: Apache-2.0
#include "ttdhp/precoder.hpp"

#include <cmath>
#include <stdexcept>

namespace ttdhp {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

HybridDesign::HybridDesign(ArrayGeometry geom, std::vector<double> ps_phases,
                           std::vector<double> delays_s, double delay_bound_s)
    : geom_(geom), ps_phases_(std::move(ps_phases)), delays_s_(std::move(delays_s)),
      delay_bound_s_(delay_bound_s) {
    const std::size_t chains = static_cast<std::size_t>(geom_.num_chains());
    const std::size_t devices = chains * static_cast<std::size_t>(geom_.ttd_per_chain());
    if (ps_phases_.size() != devices * static_cast<std::size_t>(geom_.ps_per_ttd()))
        throw std::invalid_argument("HybridDesign: phase array size does not match the geometry");
    if (delays_s_.size() != devices)
        throw std::invalid_argument("HybridDesign: delay array size does not match the geometry");
    if (!(delay_bound_s_ >= 0.0))
        throw std::invalid_argument("HybridDesign: delay bound must be non-negative");
    for (double t : delays_s_)
        if (!(t >= 0.0 && t <= delay_bound_s_))
            throw std::invalid_argument("HybridDesign: delay outside [0, bound]");
}

double HybridDesign::ps_phase(int chain, int ttd, int element) const {
    const int m = geom_.ttd_per_chain();
    const int n = geom_.ps_per_ttd();
    if (chain < 0 || chain >= geom_.num_chains() || ttd < 0 || ttd >= m || element < 0 ||
        element >= n)
        throw std::out_of_range("HybridDesign: phase index out of range");
    return ps_phases_[(static_cast<std::size_t>(chain) * m + ttd) * n + element];
}

double HybridDesign::delay_s(int chain, int ttd) const {
    const int m = geom_.ttd_per_chain();
    if (chain < 0 || chain >= geom_.num_chains() || ttd < 0 || ttd >= m)
        throw std::out_of_range("HybridDesign: delay index out of range");
    return delays_s_[static_cast<std::size_t>(chain) * m + ttd];
}

Eigen::MatrixXcd ps_matrix(const HybridDesign &design) {
    const ArrayGeometry &geom = design.geometry();
    const int nt = geom.num_antennas();
    const int m = geom.ttd_per_chain();
    const int n = geom.ps_per_ttd();
    const double scale = 1.0 / std::sqrt(static_cast<double>(nt));
    Eigen::MatrixXcd f1 = Eigen::MatrixXcd::Zero(nt, static_cast<Eigen::Index>(m) * geom.num_chains());
    for (int l = 0; l < geom.num_chains(); ++l)
        for (int mi = 0; mi < m; ++mi)
            for (int ni = 0; ni < n; ++ni)
                f1(mi * n + ni, l * m + mi) = std::polar(scale, kPi * design.ps_phase(l, mi, ni));
    return f1;
}

Eigen::MatrixXcd ttd_matrix(const HybridDesign &design, const OfdmGrid &grid, int k) {
    const ArrayGeometry &geom = design.geometry();
    const int m = geom.ttd_per_chain();
    const double fk = grid.frequency_hz(k);
    Eigen::MatrixXcd f2 =
        Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m) * geom.num_chains(), geom.num_chains());
    for (int l = 0; l < geom.num_chains(); ++l)
        for (int mi = 0; mi < m; ++mi)
            f2(l * m + mi, l) = std::polar(1.0, -2.0 * kPi * fk * design.delay_s(l, mi));
    return f2;
}

Eigen::VectorXcd effective_beam(const HybridDesign &design, const OfdmGrid &grid, int k,
                                int chain) {
    const ArrayGeometry &geom = design.geometry();
    const int m = geom.ttd_per_chain();
    const int n = geom.ps_per_ttd();
    const double ratio = grid.freq_ratio(k);
    const double carrier = grid.carrier_hz();
    const double scale = 1.0 / std::sqrt(static_cast<double>(geom.num_antennas()));
    Eigen::VectorXcd beam(geom.num_antennas());
    for (int mi = 0; mi < m; ++mi) {
        const double theta = design.normalized_delay(chain, mi, carrier);
        for (int ni = 0; ni < n; ++ni)
            beam(mi * n + ni) =
                std::polar(scale, kPi * (design.ps_phase(chain, mi, ni) - ratio * theta));
    }
    return beam;
}

FullyDigitalPrecoder::FullyDigitalPrecoder(int num_antennas, std::vector<double> directions)
    : num_antennas_(num_antennas), directions_(std::move(directions)) {
    if (num_antennas_ < 1)
        throw std::invalid_argument("FullyDigitalPrecoder: antenna count must be positive");
    if (directions_.empty())
        throw std::invalid_argument("FullyDigitalPrecoder: at least one direction required");
    for (double d : directions_)
        if (!(d >= -1.0 && d <= 1.0))
            throw std::invalid_argument("FullyDigitalPrecoder: direction outside [-1, 1]");
}

Eigen::VectorXcd FullyDigitalPrecoder::column(const OfdmGrid &grid, int k, int chain) const {
    if (chain < 0 || chain >= static_cast<int>(directions_.size()))
        throw std::out_of_range("FullyDigitalPrecoder: chain index out of range");
    return steering(num_antennas_, grid.freq_ratio(k) * directions_[static_cast<std::size_t>(chain)]);
}

Eigen::MatrixXcd FullyDigitalPrecoder::matrix(const OfdmGrid &grid, int k) const {
    Eigen::MatrixXcd f(num_antennas_, static_cast<Eigen::Index>(directions_.size()));
    for (int l = 0; l < static_cast<int>(directions_.size()); ++l)
        f.col(l) = column(grid, k, l);
    return f;
}

double objective(const HybridDesign &design, const OfdmGrid &grid, const PathSet &paths) {
    const ArrayGeometry &geom = design.geometry();
    if (paths.path_count() != geom.num_chains())
        throw std::invalid_argument("objective: one path per RF chain required");
    const int m = geom.ttd_per_chain();
    const int n = geom.ps_per_ttd();
    const int count = grid.subcarrier_count();
    const double carrier = grid.carrier_hz();
    double acc = 0.0;
    for (int k = 0; k < count; ++k) {
        const double ratio = grid.freq_ratio(k);
        for (int l = 0; l < geom.num_chains(); ++l) {
            const double psi = paths.tx_direction(l);
            for (int mi = 0; mi < m; ++mi) {
                const double theta = design.normalized_delay(l, mi, carrier);
                for (int ni = 0; ni < n; ++ni) {
                    // Phase mismatch in units of pi; the chord length squared
                    // between the two unit phasors is 2 - 2 cos(pi * diff).
                    const double diff = design.ps_phase(l, mi, ni) - ratio * theta +
                                        ratio * (mi * n + ni) * psi;
                    acc += 2.0 - 2.0 * std::cos(kPi * diff);
                }
            }
        }
    }
    return acc / (static_cast<double>(count) * geom.num_antennas());
}

double objective_dense(const HybridDesign &design, const OfdmGrid &grid, const PathSet &paths) {
    const ArrayGeometry &geom = design.geometry();
    if (paths.path_count() != geom.num_chains())
        throw std::invalid_argument("objective_dense: one path per RF chain required");
    FullyDigitalPrecoder reference(geom.num_antennas(), paths.tx_directions());
    const Eigen::MatrixXcd f1 = ps_matrix(design);
    double acc = 0.0;
    for (int k = 0; k < grid.subcarrier_count(); ++k)
        acc += (reference.matrix(grid, k) - f1 * ttd_matrix(design, grid, k)).squaredNorm();
    return acc / grid.subcarrier_count();
}

SignFlipped sign_flip(const HybridDesign &design, const PathSet &paths) {
    std::vector<double> phases = design.ps_phases();
    for (double &x : phases)
        x = -x;
    std::vector<double> delays = design.delays_s();
    for (double &t : delays)
        t = design.delay_bound_s() - t;
    return {HybridDesign(design.geometry(), std::move(phases), std::move(delays),
                         design.delay_bound_s()),
            paths.with_negated_directions()};
}

} // namespace ttdhp
