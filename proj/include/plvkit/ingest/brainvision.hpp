#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "plvkit/errors.hpp"
#include "plvkit/ini.hpp"
#include "plvkit/io.hpp"
#include "plvkit/types.hpp"

namespace plvkit::ingest {

enum class BvBinaryFormat { int16, float32 };
enum class BvOrientation { multiplexed, vectorized };

struct BvChannel {
    std::string label;
    std::string reference;   // empty = common reference
    double resolution = 1.0; // microvolts per stored unit
    std::string unit;        // optional fourth field, e.g. "µV"
};

struct BvHeader {
    std::string data_file;
    std::string marker_file;
    BvBinaryFormat binary_format = BvBinaryFormat::int16;
    BvOrientation orientation = BvOrientation::multiplexed;
    double sampling_interval_us = 0.0;
    std::vector<BvChannel> channels;

    double sampling_rate() const { return 1e6 / sampling_interval_us; }
    std::size_t n_channels() const { return channels.size(); }
    std::size_t bytes_per_value() const {
        return binary_format == BvBinaryFormat::int16 ? 2 : 4;
    }
};

namespace detail {

inline std::string csv_field(const std::vector<std::string>& parts, std::size_t i) {
    return i < parts.size() ? parts[i] : std::string{};
}

inline void reject_comma(const std::string& s, const std::string& what) {
    if (s.find(',') != std::string::npos)
        throw data_error(what + " must not contain a comma: '" + s + "'");
}

}  // namespace detail

inline BvHeader parse_brainvision_header(const std::string& text) {
    IniDocument doc = parse_ini(text);
    const IniSection& common = doc.require("Common Infos");
    BvHeader h;
    h.data_file = common.require("DataFile");
    h.marker_file = common.require("MarkerFile");

    const std::string format = common.require("DataFormat");
    if (format != "BINARY")
        throw unsupported_format_error("unsupported DataFormat '" + format + "' (only BINARY)");

    const std::string orientation = common.require("DataOrientation");
    if (orientation == "MULTIPLEXED") h.orientation = BvOrientation::multiplexed;
    else if (orientation == "VECTORIZED") h.orientation = BvOrientation::vectorized;
    else throw unsupported_format_error("unsupported DataOrientation '" + orientation + "'");

    const long long declared = to_int(common.require("NumberOfChannels"), "NumberOfChannels");
    if (declared <= 0) throw parse_error("NumberOfChannels must be positive");
    h.sampling_interval_us = to_double(common.require("SamplingInterval"), "SamplingInterval");
    if (!(h.sampling_interval_us > 0.0))
        throw parse_error("SamplingInterval must be positive");

    const IniSection& binary = doc.require("Binary Infos");
    const std::string bin = binary.require("BinaryFormat");
    if (bin == "INT_16") h.binary_format = BvBinaryFormat::int16;
    else if (bin == "IEEE_FLOAT_32") h.binary_format = BvBinaryFormat::float32;
    else throw unsupported_format_error("unsupported BinaryFormat '" + bin + "'");

    const IniSection& chans = doc.require("Channel Infos");
    h.channels.reserve(static_cast<std::size_t>(declared));
    for (long long i = 1; i <= declared; ++i) {
        const std::string key = "Ch" + std::to_string(i);
        auto value = chans.get(key);
        if (!value) throw parse_error("missing key '" + key + "' in section [Channel Infos]");
        auto parts = split(*value, ',');
        BvChannel ch;
        ch.label = detail::csv_field(parts, 0);
        ch.reference = detail::csv_field(parts, 1);
        if (ch.label.empty()) throw parse_error(key + ": empty channel label");
        const std::string res = detail::csv_field(parts, 2);
        ch.resolution = res.empty() ? 1.0 : to_double(res, key + " resolution");
        if (!(ch.resolution > 0.0)) throw parse_error(key + ": resolution must be positive");
        ch.unit = detail::csv_field(parts, 3);
        h.channels.push_back(std::move(ch));
    }
    for (std::size_t i = 0; i < h.channels.size(); ++i)
        for (std::size_t k = i + 1; k < h.channels.size(); ++k)
            if (h.channels[i].label == h.channels[k].label)
                throw parse_error("duplicate channel label '" + h.channels[i].label + "'");
    return h;
}

inline std::string write_brainvision_header(const BvHeader& h) {
    std::string out;
    out += "Brain Vision Data Exchange Header File Version 1.0\n\n";
    out += "[Common Infos]\n";
    out += "Codepage=UTF-8\n";
    out += "DataFile=" + h.data_file + "\n";
    out += "MarkerFile=" + h.marker_file + "\n";
    out += "DataFormat=BINARY\n";
    out += std::string("DataOrientation=") +
           (h.orientation == BvOrientation::multiplexed ? "MULTIPLEXED" : "VECTORIZED") + "\n";
    out += "NumberOfChannels=" + std::to_string(h.channels.size()) + "\n";
    out += "SamplingInterval=" + shortest(h.sampling_interval_us) + "\n\n";
    out += "[Binary Infos]\n";
    out += std::string("BinaryFormat=") +
           (h.binary_format == BvBinaryFormat::int16 ? "INT_16" : "IEEE_FLOAT_32") + "\n\n";
    out += "[Channel Infos]\n";
    for (std::size_t i = 0; i < h.channels.size(); ++i) {
        const BvChannel& ch = h.channels[i];
        detail::reject_comma(ch.label, "channel label");
        detail::reject_comma(ch.reference, "channel reference");
        detail::reject_comma(ch.unit, "channel unit");
        out += "Ch" + std::to_string(i + 1) + "=" + ch.label + "," + ch.reference + "," +
               shortest(ch.resolution);
        if (!ch.unit.empty()) out += "," + ch.unit;
        out += "\n";
    }
    return out;
}

// Marker positions are 1-based in the file, 0-based in memory.
inline std::vector<Marker> parse_brainvision_markers(const std::string& text) {
    IniDocument doc = parse_ini(text);
    const IniSection& infos = doc.require("Marker Infos");
    std::vector<Marker> markers;
    for (const auto& [key, value] : infos.entries) {
        if (key.rfind("Mk", 0) != 0) continue;
        auto parts = split(value, ',');
        if (parts.size() < 3)
            throw parse_error(key + ": expected at least type,description,position");
        Marker m;
        m.kind = detail::csv_field(parts, 0);
        m.description = detail::csv_field(parts, 1);
        const long long pos = to_int(parts[2], key + " position");
        if (pos < 1) throw parse_error(key + ": marker position must be >= 1");
        m.sample = static_cast<std::size_t>(pos - 1);
        const std::string size = detail::csv_field(parts, 3);
        m.length = size.empty() ? 1 : static_cast<std::size_t>(to_int(size, key + " size"));
        const std::string chan = detail::csv_field(parts, 4);
        m.channel = chan.empty() ? 0 : static_cast<long>(to_int(chan, key + " channel"));
        markers.push_back(std::move(m));
    }
    return markers;
}

inline std::string write_brainvision_markers(const std::vector<Marker>& markers,
                                             const std::string& data_file) {
    std::string out;
    out += "Brain Vision Data Exchange Marker File, Version 1.0\n\n";
    out += "[Common Infos]\n";
    out += "Codepage=UTF-8\n";
    out += "DataFile=" + data_file + "\n\n";
    out += "[Marker Infos]\n";
    for (std::size_t i = 0; i < markers.size(); ++i) {
        const Marker& m = markers[i];
        detail::reject_comma(m.kind, "marker kind");
        detail::reject_comma(m.description, "marker description");
        out += "Mk" + std::to_string(i + 1) + "=" + m.kind + "," + m.description + "," +
               std::to_string(m.sample + 1) + "," + std::to_string(m.length) + "," +
               std::to_string(m.channel) + "\n";
    }
    return out;
}

namespace detail {

inline std::int16_t read_i16le(const unsigned char* p) {
    return static_cast<std::int16_t>(static_cast<std::uint16_t>(p[0]) |
                                     (static_cast<std::uint16_t>(p[1]) << 8));
}

inline float read_f32le(const unsigned char* p) {
    std::uint32_t bits = static_cast<std::uint32_t>(p[0]) |
                         (static_cast<std::uint32_t>(p[1]) << 8) |
                         (static_cast<std::uint32_t>(p[2]) << 16) |
                         (static_cast<std::uint32_t>(p[3]) << 24);
    float f;
    std::memcpy(&f, &bits, sizeof(f));
    return f;
}

inline void append_i16le(std::string& out, std::int16_t v) {
    const auto u = static_cast<std::uint16_t>(v);
    out.push_back(static_cast<char>(u & 0xFF));
    out.push_back(static_cast<char>((u >> 8) & 0xFF));
}

inline void append_f32le(std::string& out, float f) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, sizeof(bits));
    out.push_back(static_cast<char>(bits & 0xFF));
    out.push_back(static_cast<char>((bits >> 8) & 0xFF));
    out.push_back(static_cast<char>((bits >> 16) & 0xFF));
    out.push_back(static_cast<char>((bits >> 24) & 0xFF));
}

}  // namespace detail

// Decodes the raw .eeg payload into microvolts using per-channel resolutions.
inline Recording decode_brainvision_data(const BvHeader& h, const std::string& payload,
                                         std::vector<Marker> markers) {
    const std::size_t nch = h.n_channels();
    const std::size_t frame = nch * h.bytes_per_value();
    if (payload.size() % frame != 0)
        throw data_error("data file truncated: " + std::to_string(payload.size()) +
                         " bytes is not a multiple of the " + std::to_string(frame) +
                         "-byte frame (" + std::to_string(nch) + " channels)");
    const std::size_t nsamp = payload.size() / frame;

    Recording rec;
    rec.sampling_rate = h.sampling_rate();
    rec.n_samples = nsamp;
    rec.channel_labels.reserve(nch);
    for (const auto& ch : h.channels) rec.channel_labels.push_back(ch.label);
    rec.data.resize(nch * nsamp);

    const auto* bytes = reinterpret_cast<const unsigned char*>(payload.data());
    const std::size_t width = h.bytes_per_value();
    for (std::size_t c = 0; c < nch; ++c) {
        const double res = h.channels[c].resolution;
        double* dst = rec.channel(c);
        for (std::size_t t = 0; t < nsamp; ++t) {
            const std::size_t idx = h.orientation == BvOrientation::multiplexed
                                        ? t * nch + c
                                        : c * nsamp + t;
            const unsigned char* p = bytes + idx * width;
            const double raw = h.binary_format == BvBinaryFormat::int16
                                   ? static_cast<double>(detail::read_i16le(p))
                                   : static_cast<double>(detail::read_f32le(p));
            dst[t] = raw * res;
        }
    }
    for (const Marker& m : markers)
        if (m.sample >= nsamp)
            throw data_error("marker at sample " + std::to_string(m.sample) +
                             " beyond recording length " + std::to_string(nsamp));
    rec.markers = std::move(markers);
    return rec;
}

inline std::string encode_brainvision_data(const BvHeader& h, const Recording& rec) {
    const std::size_t nch = rec.n_channels();
    if (nch != h.n_channels())
        throw data_error("header/recording channel count mismatch");
    std::string out;
    out.reserve(nch * rec.n_samples * h.bytes_per_value());
    for (std::size_t idx = 0; idx < nch * rec.n_samples; ++idx) {
        std::size_t c, t;
        if (h.orientation == BvOrientation::multiplexed) {
            t = idx / nch;
            c = idx % nch;
        } else {
            c = idx / rec.n_samples;
            t = idx % rec.n_samples;
        }
        const double res = h.channels[c].resolution;
        const double stored = rec.at(c, t) / res;
        if (h.binary_format == BvBinaryFormat::int16) {
            const long long q = std::llround(stored);
            if (q < -32768 || q > 32767)
                throw data_error("sample " + std::to_string(stored) +
                                 " exceeds INT_16 range at resolution " + shortest(res));
            detail::append_i16le(out, static_cast<std::int16_t>(q));
        } else {
            detail::append_f32le(out, static_cast<float>(stored));
        }
    }
    return out;
}

struct BvWriteOptions {
    BvBinaryFormat binary_format = BvBinaryFormat::int16;
    BvOrientation orientation = BvOrientation::multiplexed;
    std::vector<double> resolutions;       // one per channel, or empty for 1.0
    std::vector<std::string> references;   // one per channel, or empty
    std::string unit;                      // optional fourth channel field
};

struct BvPaths {
    std::filesystem::path vhdr;
    std::filesystem::path eeg;
    std::filesystem::path vmrk;
};

// Writes the .vhdr/.eeg/.vmrk triplet for a recording. The serialized form is
// canonical: writing the loaded result again reproduces identical bytes.
inline BvPaths write_recording(const std::filesystem::path& dir, const std::string& base,
                               const Recording& rec, const BvWriteOptions& opts = {}) {
    const std::size_t nch = rec.n_channels();
    if (!opts.resolutions.empty() && opts.resolutions.size() != nch)
        throw config_error("resolution list does not match channel count");
    if (!opts.references.empty() && opts.references.size() != nch)
        throw config_error("reference list does not match channel count");
    if (!(rec.sampling_rate > 0.0)) throw data_error("sampling rate must be positive");

    BvHeader h;
    h.data_file = base + ".eeg";
    h.marker_file = base + ".vmrk";
    h.binary_format = opts.binary_format;
    h.orientation = opts.orientation;
    h.sampling_interval_us = 1e6 / rec.sampling_rate;
    h.channels.resize(nch);
    for (std::size_t c = 0; c < nch; ++c) {
        h.channels[c].label = rec.channel_labels[c];
        h.channels[c].reference = opts.references.empty() ? "" : opts.references[c];
        h.channels[c].resolution = opts.resolutions.empty() ? 1.0 : opts.resolutions[c];
        h.channels[c].unit = opts.unit;
    }

    ensure_dir(dir);
    BvPaths paths{dir / (base + ".vhdr"), dir / (base + ".eeg"), dir / (base + ".vmrk")};
    write_file(paths.vhdr, write_brainvision_header(h));
    write_file(paths.eeg, encode_brainvision_data(h, rec));
    write_file(paths.vmrk, write_brainvision_markers(rec.markers, h.data_file));
    return paths;
}

// Loads the triplet referenced by a .vhdr file; data and marker paths are
// resolved relative to the header's directory.
inline Recording load_recording(const std::filesystem::path& header_path) {
    const BvHeader h = parse_brainvision_header(read_file(header_path));
    const auto dir = header_path.parent_path();
    std::vector<Marker> markers = parse_brainvision_markers(read_file(dir / h.marker_file));
    return decode_brainvision_data(h, read_file(dir / h.data_file), std::move(markers));
}

}  // namespace plvkit::ingest
