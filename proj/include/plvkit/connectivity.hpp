#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "plvkit/errors.hpp"
#include "plvkit/ingest/montage.hpp"
#include "plvkit/stats.hpp"
#include "plvkit/types.hpp"

namespace plvkit {

namespace detail {

// Unit phasors of the phase tensor, transposed to [channel][sample][trial]
// so the trial sum over a channel pair runs over contiguous memory.
struct PhasorBank {
    std::size_t n_trials = 0;
    std::size_t n_samples = 0;
    std::vector<double> re, im;  // [local channel][sample][trial]

    static PhasorBank build(const Tensor3& phase, const std::vector<std::size_t>& channels) {
        PhasorBank bank;
        bank.n_trials = phase.trials();
        bank.n_samples = phase.samples();
        bank.re.resize(channels.size() * bank.n_samples * bank.n_trials);
        bank.im.resize(bank.re.size());
        for (std::size_t lc = 0; lc < channels.size(); ++lc) {
            for (std::size_t n = 0; n < bank.n_trials; ++n) {
                const double* row = phase.row(n, channels[lc]);
                for (std::size_t t = 0; t < bank.n_samples; ++t) {
                    const std::size_t at = (lc * bank.n_samples + t) * bank.n_trials + n;
                    bank.re[at] = std::cos(row[t]);
                    bank.im[at] = std::sin(row[t]);
                }
            }
        }
        return bank;
    }

    const double* re_at(std::size_t lc, std::size_t t) const {
        return re.data() + (lc * n_samples + t) * n_trials;
    }
    const double* im_at(std::size_t lc, std::size_t t) const {
        return im.data() + (lc * n_samples + t) * n_trials;
    }
};

// |mean over trials of exp(j(phi_lo - phi_hi))| at one sample. The caller
// passes channels in canonical (lo, hi) order so that both orders of the
// same pair evaluate the identical expression.
inline double pair_sample_plv(const double* rl, const double* il, const double* rh,
                              const double* ih, std::size_t n_trials) {
    double sr = 0.0, si = 0.0;
    for (std::size_t j = 0; j < n_trials; ++j) {
        sr += rl[j] * rh[j] + il[j] * ih[j];
        si += il[j] * rh[j] - rl[j] * ih[j];
    }
    const double v = std::sqrt(sr * sr + si * si) / static_cast<double>(n_trials);
    if (v > 1.0 + 1e-9)
        throw numeric_error("PLV " + std::to_string(v) + " exceeds 1; phasor sum corrupt");
    return v > 1.0 ? 1.0 : v;
}

inline void require_channel(const PhaseEpochs& phases, std::size_t c) {
    if (c >= phases.phase.channels())
        throw data_error("channel index " + std::to_string(c) + " out of range (" +
                         std::to_string(phases.phase.channels()) + " channels)");
}

inline void require_trials(const PhaseEpochs& phases) {
    if (phases.phase.trials() < 2)
        throw insufficient_trials_error("PLV needs at least 2 trials, got " +
                                        std::to_string(phases.phase.trials()));
}

inline void require_edge(std::size_t edge_exclusion, std::size_t n_samples) {
    if (2 * edge_exclusion >= n_samples)
        throw config_error("edge exclusion of " + std::to_string(edge_exclusion) +
                           " samples per side leaves no interior in " +
                           std::to_string(n_samples) + " samples");
}

}  // namespace detail

// Per-sample PLV sequence for one channel pair over the full window.
inline std::vector<double> plv_timeseries(const PhaseEpochs& phases, std::size_t i, std::size_t k) {
    detail::require_trials(phases);
    detail::require_channel(phases, i);
    detail::require_channel(phases, k);
    const std::size_t n_samples = phases.phase.samples();
    if (i == k) return std::vector<double>(n_samples, 1.0);

    const std::size_t lo = std::min(i, k), hi = std::max(i, k);
    const auto bank = detail::PhasorBank::build(phases.phase, {lo, hi});
    std::vector<double> out(n_samples);
    for (std::size_t t = 0; t < n_samples; ++t)
        out[t] = detail::pair_sample_plv(bank.re_at(0, t), bank.im_at(0, t), bank.re_at(1, t),
                                         bank.im_at(1, t), bank.n_trials);
    return out;
}

// Time-averaged PLV over interior samples (edge_exclusion trimmed per side).
inline double plv_pair(const PhaseEpochs& phases, std::size_t i, std::size_t k,
                       std::size_t edge_exclusion) {
    detail::require_trials(phases);
    detail::require_channel(phases, i);
    detail::require_channel(phases, k);
    detail::require_edge(edge_exclusion, phases.phase.samples());
    if (i == k) return 1.0;

    const std::size_t lo = std::min(i, k), hi = std::max(i, k);
    const auto bank = detail::PhasorBank::build(phases.phase, {lo, hi});
    const std::size_t t0 = edge_exclusion;
    const std::size_t t1 = phases.phase.samples() - edge_exclusion;
    double acc = 0.0;
    for (std::size_t t = t0; t < t1; ++t)
        acc += detail::pair_sample_plv(bank.re_at(0, t), bank.im_at(0, t), bank.re_at(1, t),
                                       bank.im_at(1, t), bank.n_trials);
    return acc / static_cast<double>(t1 - t0);
}

// All unordered pairs at once. Identical per-pair accumulation order as
// plv_pair, so matrix entries match the scalar path bit-for-bit.
inline PlvMatrix plv_matrix(const PhaseEpochs& phases, std::size_t edge_exclusion) {
    detail::require_trials(phases);
    detail::require_edge(edge_exclusion, phases.phase.samples());
    const std::size_t nch = phases.phase.channels();

    std::vector<std::size_t> all(nch);
    for (std::size_t c = 0; c < nch; ++c) all[c] = c;
    const auto bank = detail::PhasorBank::build(phases.phase, all);

    const std::size_t t0 = edge_exclusion;
    const std::size_t t1 = phases.phase.samples() - edge_exclusion;
    std::vector<double> acc(nch * nch, 0.0);
    for (std::size_t t = t0; t < t1; ++t) {
        for (std::size_t i = 0; i < nch; ++i) {
            const double* ri = bank.re_at(i, t);
            const double* ii = bank.im_at(i, t);
            for (std::size_t k = i + 1; k < nch; ++k)
                acc[i * nch + k] += detail::pair_sample_plv(ri, ii, bank.re_at(k, t),
                                                            bank.im_at(k, t), bank.n_trials);
        }
    }

    PlvMatrix m;
    m.n_channels = nch;
    m.values.assign(nch * nch, 1.0);
    m.band = phases.band;
    m.paradigm = phases.paradigm;
    m.class_label = phases.class_label;
    m.condition = phases.condition;
    const double count = static_cast<double>(t1 - t0);
    for (std::size_t i = 0; i < nch; ++i)
        for (std::size_t k = i + 1; k < nch; ++k) {
            const double v = acc[i * nch + k] / count;
            m.at(i, k) = v;
            m.at(k, i) = v;
        }
    return m;
}

// Grand average over channel pairs within one region (a == b, diagonal
// excluded) or across two disjoint regions. All x All covers every pair.
inline RegionConnectivity region_average(const PlvMatrix& m, const ingest::Montage& montage,
                                         Region a, Region b) {
    if (montage.n_channels() != m.n_channels)
        throw data_error("montage covers " + std::to_string(montage.n_channels()) +
                         " channels, matrix has " + std::to_string(m.n_channels));
    const auto ca = montage.region_channels(a);
    const auto cb = montage.region_channels(b);
    if (ca.empty()) throw data_error(std::string("region ") + region_tag(a) + " has no channels");
    if (cb.empty()) throw data_error(std::string("region ") + region_tag(b) + " has no channels");

    double sum = 0.0;
    std::size_t count = 0;
    if (a == b) {
        for (std::size_t x = 0; x < ca.size(); ++x)
            for (std::size_t y = x + 1; y < ca.size(); ++y) {
                sum += m.at(ca[x], ca[y]);
                ++count;
            }
        if (count == 0)
            throw data_error(std::string("region ") + region_tag(a) +
                             " has no internal channel pair");
    } else {
        for (std::size_t x : ca)
            for (std::size_t y : cb) {
                if (x == y)
                    throw data_error(std::string("regions ") + region_tag(a) + " and " +
                                     region_tag(b) + " overlap on a channel");
                sum += m.at(x, y);
                ++count;
            }
    }
    return RegionConnectivity{a, b, sum / static_cast<double>(count)};
}

// Subjects x classes connectivity grid with per-class mean and sample std,
// the Avg./Std. rows of the class tables.
struct ClassTable {
    std::vector<std::string> subject_ids;
    std::vector<std::string> class_labels;
    std::vector<std::vector<double>> values;  // [subject][class]
    std::vector<double> avg;                  // per class
    std::vector<double> std_dev;              // per class
};

inline ClassTable class_table(const std::vector<std::string>& subject_ids,
                              const std::vector<std::string>& class_labels,
                              const std::vector<std::vector<double>>& values) {
    if (values.size() != subject_ids.size())
        throw data_error("class table: " + std::to_string(values.size()) + " value rows for " +
                         std::to_string(subject_ids.size()) + " subjects");
    for (std::size_t s = 0; s < values.size(); ++s)
        if (values[s].size() != class_labels.size())
            throw data_error("class table: subject " + subject_ids[s] + " has " +
                             std::to_string(values[s].size()) + " values for " +
                             std::to_string(class_labels.size()) + " classes");

    ClassTable table;
    table.subject_ids = subject_ids;
    table.class_labels = class_labels;
    table.values = values;
    for (std::size_t c = 0; c < class_labels.size(); ++c) {
        std::vector<double> column(values.size());
        for (std::size_t s = 0; s < values.size(); ++s) column[s] = values[s][c];
        const auto sum = stats::summarize(column);
        table.avg.push_back(sum.mean);
        table.std_dev.push_back(sum.std);
    }
    return table;
}

}  // namespace plvkit
