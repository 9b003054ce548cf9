#pragma once

// Umbrella header for the whole toolkit.

#include "plvkit/connectivity.hpp"
#include "plvkit/dsp/butterworth.hpp"
#include "plvkit/dsp/fft.hpp"
#include "plvkit/dsp/hilbert.hpp"
#include "plvkit/errors.hpp"
#include "plvkit/ingest/brainvision.hpp"
#include "plvkit/ingest/epoch_csv.hpp"
#include "plvkit/ingest/montage.hpp"
#include "plvkit/ini.hpp"
#include "plvkit/io.hpp"
#include "plvkit/preprocess.hpp"
#include "plvkit/stats.hpp"
#include "plvkit/synth/coupled.hpp"
#include "plvkit/synth/pink_noise.hpp"
#include "plvkit/synth/rng.hpp"
#include "plvkit/synth/von_mises.hpp"
#include "plvkit/tensor.hpp"
#include "plvkit/types.hpp"
