#pragma once

#include <cstddef>
#include <vector>

#include "plvkit/errors.hpp"

namespace plvkit {

// Dense trials x channels x samples array, contiguous with samples fastest.
class Tensor3 {
public:
    Tensor3() = default;
    Tensor3(std::size_t trials, std::size_t channels, std::size_t samples)
        : trials_(trials), channels_(channels), samples_(samples),
          data_(trials * channels * samples, 0.0) {}

    std::size_t trials() const { return trials_; }
    std::size_t channels() const { return channels_; }
    std::size_t samples() const { return samples_; }
    bool empty() const { return data_.empty(); }

    double& at(std::size_t trial, std::size_t channel, std::size_t sample) {
        return data_[(trial * channels_ + channel) * samples_ + sample];
    }
    double at(std::size_t trial, std::size_t channel, std::size_t sample) const {
        return data_[(trial * channels_ + channel) * samples_ + sample];
    }

    // Pointer to the samples of one (trial, channel) row.
    double* row(std::size_t trial, std::size_t channel) {
        return data_.data() + (trial * channels_ + channel) * samples_;
    }
    const double* row(std::size_t trial, std::size_t channel) const {
        return data_.data() + (trial * channels_ + channel) * samples_;
    }

    std::vector<double>& flat() { return data_; }
    const std::vector<double>& flat() const { return data_; }

private:
    std::size_t trials_ = 0;
    std::size_t channels_ = 0;
    std::size_t samples_ = 0;
    std::vector<double> data_;
};

}  // namespace plvkit
