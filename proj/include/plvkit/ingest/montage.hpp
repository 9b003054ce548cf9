#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "plvkit/errors.hpp"
#include "plvkit/ini.hpp"
#include "plvkit/io.hpp"
#include "plvkit/types.hpp"

namespace plvkit::ingest {

// Channel-to-region assignment resolved against a concrete channel order.
struct Montage {
    std::vector<std::string> channel_labels;
    std::vector<Region> channel_region;  // parallel to channel_labels

    std::size_t n_channels() const { return channel_labels.size(); }

    Region region_of(std::size_t channel) const { return channel_region[channel]; }

    // Channel indices belonging to a region; All returns every channel.
    std::vector<std::size_t> region_channels(Region r) const {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < channel_region.size(); ++c)
            if (r == Region::All || channel_region[c] == r) out.push_back(c);
        return out;
    }
};

// Montage text: one `CHANNEL_LABEL,REGION_TAG` per line, `#` comments.
// Unmapped channels become NONE; every region that appears needs >= 2
// channels so it has at least one internal pair.
inline Montage parse_montage(const std::string& text, const std::vector<std::string>& channel_labels) {
    Montage m;
    m.channel_labels = channel_labels;
    m.channel_region.assign(channel_labels.size(), Region::None);

    std::vector<char> mapped(channel_labels.size(), 0);
    auto lines = split(text, '\n');
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string line = plvkit::detail::trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        auto parts = split(line, ',');
        if (parts.size() != 2)
            throw parse_error("montage line " + std::to_string(i + 1) +
                              ": expected CHANNEL_LABEL,REGION_TAG");
        const std::string label = plvkit::detail::trim(parts[0]);
        const Region region = parse_region_tag(plvkit::detail::trim(parts[1]));
        if (region == Region::All)
            throw config_error("montage line " + std::to_string(i + 1) +
                               ": ALL is implicit and cannot be assigned");
        auto it = std::find(channel_labels.begin(), channel_labels.end(), label);
        if (it == channel_labels.end())
            throw config_error("montage references channel '" + label +
                               "' absent from the recording");
        const auto idx = static_cast<std::size_t>(it - channel_labels.begin());
        if (mapped[idx])
            throw config_error("montage maps channel '" + label + "' twice");
        mapped[idx] = 1;
        m.channel_region[idx] = region;
    }

    for (Region r : region_order) {
        const auto members = m.region_channels(r);
        if (!members.empty() && members.size() < 2)
            throw config_error(std::string("region ") + region_tag(r) +
                               " has only 1 channel; regions need >= 2 for internal pairs");
    }
    return m;
}

inline Montage load_montage(const std::filesystem::path& path,
                            const std::vector<std::string>& channel_labels) {
    return parse_montage(read_file(path), channel_labels);
}

// Built-in 64-channel 10-10 assignment. Sites claimed by several groups are
// resolved by the priority order B > A > M > S > V > P; the remaining
// channels stay NONE. Overridable by any montage file.
inline const char* default_montage_text() {
    return R"(# Default 64-channel region montage (10-10 labels).
# Overlapping sites resolved by priority B > A > M > S > V > P.
# B: speech-production/comprehension sites (left fronto-temporal)
FC5,B
FT7,B
C5,B
T7,B
TP7,B
CP5,B
# A: auditory sites remaining after B claims the left temporal row
T8,A
FT8,A
TP8,A
# M: motor strip
C1,M
C2,M
C3,M
C4,M
C6,M
Cz,M
FC1,M
FC2,M
FC3,M
FC4,M
# S: somatosensory row (CP5 claimed by B)
CP1,S
CP2,S
CP3,S
CP4,S
CP6,S
CPz,S
# V: occipital / parieto-occipital
O1,V
Oz,V
O2,V
PO3,V
POz,V
PO4,V
PO7,V
PO8,V
# P: prefrontal
Fp1,P
Fpz,P
Fp2,P
AF3,P
AF4,P
AF7,P
AF8,P
)";
}

inline Montage default_montage(const std::vector<std::string>& channel_labels) {
    return parse_montage(default_montage_text(), channel_labels);
}

// The 64 channel labels used by the default synthetic cap (10-10 system,
// FCz reserved as the recording reference).
inline std::vector<std::string> default_channel_labels() {
    return {"Fp1", "Fpz", "Fp2", "AF7", "AF3", "AFz", "AF4", "AF8",
            "F7",  "F5",  "F3",  "F1",  "Fz",  "F2",  "F4",  "F6",
            "F8",  "FT7", "FC5", "FC3", "FC1", "FC2", "FC4", "FC6",
            "FT8", "T7",  "C5",  "C3",  "C1",  "Cz",  "C2",  "C4",
            "C6",  "T8",  "TP9", "TP7", "CP5", "CP3", "CP1", "CPz",
            "CP2", "CP4", "CP6", "TP8", "TP10", "P7", "P5",  "P3",
            "P1",  "Pz",  "P2",  "P4",  "P6",  "P8",  "PO9", "PO7",
            "PO3", "POz", "PO4", "PO8", "PO10", "O1", "Oz",  "O2"};
}

}  // namespace plvkit::ingest
