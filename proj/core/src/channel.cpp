// SPDX-License-Identifier: Apache-2.0
#include "ttdhp/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ttdhp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;

void check_angle(double angle_rad, const char *what) {
    if (!(angle_rad >= -kHalfPi && angle_rad <= kHalfPi))
        throw std::invalid_argument(std::string("PathSet: ") + what + " outside [-pi/2, pi/2]");
}

} // namespace

PathSet::PathSet(std::vector<Path> paths, int num_rx_antennas) {
    if (paths.empty())
        throw std::invalid_argument("PathSet: at least one path required");
    if (num_rx_antennas < 1)
        throw std::invalid_argument("PathSet: receive antenna count must be positive");
    for (const Path &p : paths) {
        check_angle(p.aod_rad, "departure angle");
        check_angle(p.aoa_rad, "arrival angle");
        tx_dir_.push_back(std::sin(p.aod_rad));
        rx_dir_.push_back(std::sin(p.aoa_rad));
    }
    paths_ = std::move(paths);
    num_rx_ = num_rx_antennas;
}

PathSet PathSet::from_directions(const std::vector<double> &tx_directions, int num_rx_antennas) {
    if (tx_directions.empty())
        throw std::invalid_argument("PathSet: at least one direction required");
    if (num_rx_antennas < 1)
        throw std::invalid_argument("PathSet: receive antenna count must be positive");
    PathSet out;
    out.num_rx_ = num_rx_antennas;
    for (double dir : tx_directions) {
        if (!(dir >= -1.0 && dir <= 1.0))
            throw std::invalid_argument("PathSet: spatial direction outside [-1, 1]");
        Path p;
        p.aod_rad = std::asin(dir);
        out.paths_.push_back(p);
        // The given direction is canonical; no sin(asin(.)) round trip.
        out.tx_dir_.push_back(dir);
        out.rx_dir_.push_back(0.0);
    }
    return out;
}

PathSet PathSet::random(std::uint64_t seed, int path_count, int num_rx_antennas,
                        double delay_window_s) {
    if (path_count < 1)
        throw std::invalid_argument("PathSet: at least one path required");
    if (!(delay_window_s >= 0.0))
        throw std::invalid_argument("PathSet: delay window must be non-negative");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(2.0));
    std::uniform_real_distribution<double> delay(0.0, delay_window_s);
    std::uniform_real_distribution<double> angle(-kHalfPi, kHalfPi);
    std::vector<Path> paths(static_cast<std::size_t>(path_count));
    for (Path &p : paths) {
        p.gain = {gauss(rng), gauss(rng)};
        p.delay_s = delay_window_s > 0.0 ? delay(rng) : 0.0;
        p.aod_rad = angle(rng);
        p.aoa_rad = angle(rng);
    }
    return PathSet(std::move(paths), num_rx_antennas);
}

const Path &PathSet::path(int l) const {
    if (l < 0 || l >= path_count())
        throw std::out_of_range("PathSet: path index out of range");
    return paths_[static_cast<std::size_t>(l)];
}

double PathSet::tx_direction(int l) const {
    if (l < 0 || l >= path_count())
        throw std::out_of_range("PathSet: path index out of range");
    return tx_dir_[static_cast<std::size_t>(l)];
}

double PathSet::rx_direction(int l) const {
    if (l < 0 || l >= path_count())
        throw std::out_of_range("PathSet: path index out of range");
    return rx_dir_[static_cast<std::size_t>(l)];
}

PathSet PathSet::with_negated_directions() const {
    PathSet out;
    out.num_rx_ = num_rx_;
    out.paths_ = paths_;
    out.tx_dir_ = tx_dir_;
    out.rx_dir_ = rx_dir_;
    for (std::size_t i = 0; i < out.paths_.size(); ++i) {
        out.paths_[i].aod_rad = -out.paths_[i].aod_rad;
        out.paths_[i].aoa_rad = -out.paths_[i].aoa_rad;
        out.tx_dir_[i] = -out.tx_dir_[i];
        out.rx_dir_[i] = -out.rx_dir_[i];
    }
    return out;
}

Eigen::VectorXcd steering(int count, double direction) {
    if (count < 1)
        throw std::invalid_argument("steering: element count must be positive");
    const double scale = 1.0 / std::sqrt(static_cast<double>(count));
    Eigen::VectorXcd v(count);
    for (int n = 0; n < count; ++n)
        v(n) = std::polar(scale, -kPi * n * direction);
    return v;
}

double matched_gain(int count, double delta_rad) {
    if (count < 1)
        throw std::invalid_argument("matched_gain: element count must be positive");
    const double s = std::sin(delta_rad);
    // Removable singularity: at integer multiples of pi the ratio's limit has
    // magnitude count, so the normalized gain is 1.
    if (std::abs(s) < 1e-12)
        return 1.0;
    return std::abs(std::sin(count * delta_rad) / (count * s));
}

Eigen::MatrixXcd channel_matrix(const OfdmGrid &grid, const ArrayGeometry &geom,
                                const PathSet &paths, int k) {
    if (paths.path_count() > geom.num_chains())
        throw std::invalid_argument("channel_matrix: more paths than RF chains");
    const double fk = grid.frequency_hz(k);
    const double ratio = grid.freq_ratio(k);
    const int nt = geom.num_antennas();
    const int nr = paths.num_rx_antennas();
    const int count = paths.path_count();
    const double scale = std::sqrt(static_cast<double>(nt) * nr / count);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(nt, nr);
    for (int l = 0; l < count; ++l) {
        const Path &p = paths.path(l);
        const std::complex<double> phase = std::polar(1.0, -2.0 * kPi * p.delay_s * fk);
        h.noalias() += (scale * p.gain * phase) *
                       (steering(nt, ratio * paths.tx_direction(l)) *
                        steering(nr, ratio * paths.rx_direction(l)).adjoint());
    }
    return h;
}

double array_gain(const Eigen::VectorXcd &beam, const OfdmGrid &grid, int k,
                  double center_direction) {
    const double norm = beam.norm();
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("array_gain: beam must have unit 2-norm");
    const double direction = grid.freq_ratio(k) * center_direction;
    const int count = static_cast<int>(beam.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(count));
    std::complex<double> acc(0.0, 0.0);
    for (int n = 0; n < count; ++n)
        acc += std::polar(scale, kPi * n * direction) * beam(n);
    return std::abs(acc);
}

std::vector<double> squint_profile(const OfdmGrid &grid, int num_antennas,
                                   double center_direction) {
    if (num_antennas < 1)
        throw std::invalid_argument("squint_profile: antenna count must be positive");
    std::vector<double> out(static_cast<std::size_t>(grid.subcarrier_count()));
    for (int k = 0; k < grid.subcarrier_count(); ++k) {
        const double delta = kHalfPi * (grid.freq_ratio(k) - 1.0) * center_direction;
        out[static_cast<std::size_t>(k)] = matched_gain(num_antennas, delta);
    }
    return out;
}

std::vector<double> squint_profile(const OfdmGrid &grid, const ArrayGeometry &geom,
                                   double center_direction) {
    return squint_profile(grid, geom.num_antennas(), center_direction);
}

} // namespace ttdhp
