#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "plvkit/errors.hpp"
#include "plvkit/tensor.hpp"

namespace plvkit {

struct FrequencyBand {
    std::string name;
    double low_hz = 0.0;
    double high_hz = 0.0;
};

enum class Paradigm { imagined_speech, visual_imagery };
enum class Condition { task, rest };

// Cortical region groups. All = every channel (the implicit seventh group);
// None = channel not assigned to any group.
enum class Region { B, V, A, M, P, S, All, None };

// Fixed region order; report rows follow nested pairs over this sequence.
inline constexpr std::array<Region, 6> region_order = {
    Region::B, Region::V, Region::A, Region::M, Region::P, Region::S};

inline const char* region_tag(Region r) {
    switch (r) {
        case Region::B: return "B";
        case Region::V: return "V";
        case Region::A: return "A";
        case Region::M: return "M";
        case Region::P: return "P";
        case Region::S: return "S";
        case Region::All: return "ALL";
        case Region::None: return "NONE";
    }
    return "NONE";
}

inline Region parse_region_tag(const std::string& tag) {
    if (tag == "B") return Region::B;
    if (tag == "V") return Region::V;
    if (tag == "A") return Region::A;
    if (tag == "M") return Region::M;
    if (tag == "P") return Region::P;
    if (tag == "S") return Region::S;
    if (tag == "ALL") return Region::All;
    if (tag == "NONE") return Region::None;
    throw parse_error("unknown region tag '" + tag + "'");
}

// The 15 unordered region pairs in report row order:
// B-V, B-A, B-M, B-P, B-S, V-A, V-M, V-P, V-S, A-M, A-P, A-S, M-P, M-S, P-S.
inline std::vector<std::pair<Region, Region>> region_pairs() {
    std::vector<std::pair<Region, Region>> pairs;
    pairs.reserve(15);
    for (std::size_t i = 0; i < region_order.size(); ++i)
        for (std::size_t k = i + 1; k < region_order.size(); ++k)
            pairs.emplace_back(region_order[i], region_order[k]);
    return pairs;
}

inline const char* paradigm_name(Paradigm p) {
    return p == Paradigm::imagined_speech ? "imagined_speech" : "visual_imagery";
}

inline Paradigm parse_paradigm(const std::string& name) {
    if (name == "imagined_speech") return Paradigm::imagined_speech;
    if (name == "visual_imagery") return Paradigm::visual_imagery;
    throw parse_error("unknown paradigm '" + name + "'");
}

inline const char* condition_name(Condition c) {
    return c == Condition::task ? "task" : "rest";
}

inline Condition parse_condition(const std::string& name) {
    if (name == "task") return Condition::task;
    if (name == "rest") return Condition::rest;
    throw parse_error("unknown condition '" + name + "'");
}

struct Marker {
    std::string kind;         // e.g. "Stimulus"
    std::string description;  // e.g. "imagined_speech:ambulance:task"
    std::size_t sample = 0;   // 0-based sample index into the recording
    std::size_t length = 1;   // duration in samples
    long channel = 0;         // 0 = all channels (format convention)
};

// Continuous multichannel recording in microvolts, channels x samples.
struct Recording {
    std::vector<std::string> channel_labels;
    double sampling_rate = 0.0;
    std::size_t n_samples = 0;
    std::vector<double> data;  // flat, channel-major
    std::vector<Marker> markers;

    std::size_t n_channels() const { return channel_labels.size(); }
    double* channel(std::size_t c) { return data.data() + c * n_samples; }
    const double* channel(std::size_t c) const { return data.data() + c * n_samples; }
    double& at(std::size_t c, std::size_t t) { return data[c * n_samples + t]; }
    double at(std::size_t c, std::size_t t) const { return data[c * n_samples + t]; }
};

struct EpochWindow {
    double start_offset_s = 0.0;  // relative to the aligning marker
    double duration_s = 2.0;
};

struct EpochSet {
    Tensor3 data;  // trials x channels x samples, microvolts
    std::vector<std::string> channel_labels;
    double sampling_rate = 0.0;
    Paradigm paradigm = Paradigm::imagined_speech;
    std::string class_label;
    Condition condition = Condition::task;
    EpochWindow window;
};

struct PhaseEpochs {
    Tensor3 phase;  // radians, each value in (-pi, pi]
    std::vector<std::string> channel_labels;
    double sampling_rate = 0.0;
    FrequencyBand band;
    Paradigm paradigm = Paradigm::imagined_speech;
    std::string class_label;
    Condition condition = Condition::task;
    EpochWindow window;
};

// Symmetric channels x channels PLV matrix with unit diagonal.
struct PlvMatrix {
    std::size_t n_channels = 0;
    std::vector<double> values;  // flat row-major
    FrequencyBand band;
    Paradigm paradigm = Paradigm::imagined_speech;
    std::string class_label;
    Condition condition = Condition::task;

    double& at(std::size_t i, std::size_t k) { return values[i * n_channels + k]; }
    double at(std::size_t i, std::size_t k) const { return values[i * n_channels + k]; }
};

struct RegionConnectivity {
    Region a = Region::All;
    Region b = Region::All;
    double value = 0.0;
};

// One row of the region report: task-vs-rest contrast for a region pair.
struct RegionPairResult {
    Region a = Region::B;
    Region b = Region::V;
    double mean_task = 0.0;
    double mean_rest = 0.0;
    double t = 0.0;
    double p = 1.0;
    std::size_t df = 0;
};

}  // namespace plvkit
