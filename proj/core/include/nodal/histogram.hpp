#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nodal {

/// Uniform-bin counting histogram over [0, inf) with density normalized
/// to unit mass: density(k) = counts[k] / (total * bin_width).
class Histogram {
  public:
    explicit Histogram(double bin_width) : bin_width_(bin_width) {
        if (!(bin_width > 0.0))
            throw std::invalid_argument("bin width must be > 0");
    }

    void add(double x) {
        if (x < 0.0) x = 0.0;
        const auto k = static_cast<std::size_t>(x / bin_width_);
        if (k >= counts_.size()) counts_.resize(k + 1, 0);
        ++counts_[k];
        ++total_;
    }

    void merge(const Histogram& other) {
        if (other.bin_width_ != bin_width_)
            throw std::invalid_argument("bin width mismatch in merge");
        if (other.counts_.size() > counts_.size())
            counts_.resize(other.counts_.size(), 0);
        for (std::size_t k = 0; k < other.counts_.size(); ++k)
            counts_[k] += other.counts_[k];
        total_ += other.total_;
    }

    double bin_width() const { return bin_width_; }
    std::size_t bins() const { return counts_.size(); }
    std::uint64_t total() const { return total_; }
    std::uint64_t count(std::size_t k) const {
        return k < counts_.size() ? counts_[k] : 0;
    }
    double bin_left(std::size_t k) const { return double(k) * bin_width_; }
    double bin_center(std::size_t k) const {
        return (double(k) + 0.5) * bin_width_;
    }
    double density(std::size_t k) const {
        if (total_ == 0) return 0.0;
        return double(count(k)) / (double(total_) * bin_width_);
    }
    /// Standard error of density(k) from binomial counting statistics.
    double density_std_error(std::size_t k) const {
        if (total_ == 0) return 0.0;
        const double c = double(count(k));
        const double p = c / double(total_);
        return std::sqrt(c * (1.0 - p)) / (double(total_) * bin_width_);
    }
    /// Total mass sum(density * bin_width); 1 when total > 0.
    double mass() const {
        double m = 0.0;
        for (std::size_t k = 0; k < counts_.size(); ++k)
            m += density(k) * bin_width_;
        return m;
    }
    bool operator==(const Histogram& other) const {
        return bin_width_ == other.bin_width_ && total_ == other.total_ &&
               counts_ == other.counts_;
    }

  private:
    double bin_width_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

}  // namespace nodal
