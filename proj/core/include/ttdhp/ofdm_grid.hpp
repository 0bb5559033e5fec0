// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <vector>

namespace ttdhp {

/**
 * Symmetric OFDM subcarrier grid around a carrier frequency.
 *
 * Subcarrier k (0-based) sits at f_c + (B/K) * (k - (K-1)/2). The count is
 * required to be odd so the center subcarrier lands on f_c exactly and the
 * mean of f_k / f_c over the grid is exactly 1.
 */
class OfdmGrid {
  public:
    OfdmGrid(double carrier_hz, double bandwidth_hz, int subcarrier_count)
        : carrier_hz_(carrier_hz), bandwidth_hz_(bandwidth_hz), count_(subcarrier_count) {
        if (!(carrier_hz_ > 0.0))
            throw std::invalid_argument("OfdmGrid: carrier frequency must be positive");
        if (!(bandwidth_hz_ >= 0.0))
            throw std::invalid_argument("OfdmGrid: bandwidth must be non-negative");
        // Keeps every subcarrier frequency strictly positive.
        if (bandwidth_hz_ >= 2.0 * carrier_hz_)
            throw std::invalid_argument("OfdmGrid: bandwidth must be below twice the carrier frequency");
        if (count_ < 1 || count_ % 2 == 0)
            throw std::invalid_argument("OfdmGrid: subcarrier count must be a positive odd integer");
    }

    double carrier_hz() const noexcept { return carrier_hz_; }
    double bandwidth_hz() const noexcept { return bandwidth_hz_; }
    int subcarrier_count() const noexcept { return count_; }

    // 0-based index of the subcarrier that sits on the carrier exactly.
    int center_index() const noexcept { return (count_ - 1) / 2; }

    double frequency_hz(int k) const {
        check_index(k);
        return carrier_hz_ + (bandwidth_hz_ / count_) * static_cast<double>(k - center_index());
    }

    // f_k / f_c; exactly 1 at the center subcarrier.
    double freq_ratio(int k) const { return frequency_hz(k) / carrier_hz_; }

    std::vector<double> frequencies_hz() const {
        std::vector<double> out(static_cast<std::size_t>(count_));
        for (int k = 0; k < count_; ++k)
            out[static_cast<std::size_t>(k)] = frequency_hz(k);
        return out;
    }

    std::vector<double> freq_ratios() const {
        std::vector<double> out(static_cast<std::size_t>(count_));
        for (int k = 0; k < count_; ++k)
            out[static_cast<std::size_t>(k)] = freq_ratio(k);
        return out;
    }

  private:
    void check_index(int k) const {
        if (k < 0 || k >= count_)
            throw std::out_of_range("OfdmGrid: subcarrier index out of range");
    }

    double carrier_hz_;
    double bandwidth_hz_;
    int count_;
};

} // namespace ttdhp
