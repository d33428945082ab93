#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qoe/dataset.hpp"

namespace qoe::synth {

// One cell of the condition grid. PLR values are percentages.
struct StreamCondition {
    double fps = 25.0;
    double qp = 23.0;
    double nr = 0.0;
    double video_plr = 0.0;
    double audio_plr = 0.0;
};

struct Frame {
    enum class Kind { kIntra, kPredicted, kAudio };
    Kind kind = Kind::kPredicted;
    double timestamp = 0.0;   // seconds
    double size_bytes = 0.0;  // as sent
    double received_bytes = 0.0;
    bool lost = false;        // every packet dropped
};

struct FrameTrace {
    std::vector<Frame> frames;  // video then audio, each in timestamp order
    double duration_s = 0.0;
    double video_bitrate_bps = 0.0;  // nominal (sent)
    double audio_bitrate_bps = 0.0;
};

struct GridSpec {
    std::vector<double> fps{10, 15, 20, 25};
    std::vector<double> qp{23, 27, 31, 35};
    std::vector<double> nr{0, 999};
    std::vector<double> plr{0, 0.1, 0.5, 1, 5};  // audio loss locked to video loss
    bool extended = false;                       // permit off-grid axis values

    static GridSpec full() { return {}; }
    static GridSpec tiny();
};

// Full Cartesian grid, fps-major order. Off-grid values are rejected unless
// spec.extended is set.
std::vector<StreamCondition> enumerate_conditions(const GridSpec& spec = {});

// 42 s trace: I-frames every 10 s, P-frames at the condition's rate, audio at
// 50 frames/s. Packets are dropped i.i.d. at the condition's loss rate except
// during the first second. Same seed and condition reproduce the trace; only
// the realized losses change when the loss rate moves.
FrameTrace simulate_transmission(const StreamCondition& c, uint64_t seed);

// Feature names in canonical column order (125 entries).
const std::vector<std::string>& table_columns();

// One feature vector (ordered as table_columns()) from a trace. The lossless
// reference for the *Diff columns is the trace's own sent sizes. Throws when
// the trace covers less than 31 s.
std::vector<double> extract_features(const FrameTrace& t, const StreamCondition& c);

// Deterministic ground-truth surrogate: strictly decreasing in video_plr,
// non-increasing in qp, non-decreasing in fps. Not a claim about real MOS.
double synth_mos_clean(const StreamCondition& c);

// Clean surrogate plus seeded noise of amplitude <= 0.1, clamped to [1, 5].
double synth_mos(const StreamCondition& c, uint64_t noise_seed);

// One row per condition, columns ordered as table_columns().
QualityDataset generate_dataset(const std::vector<StreamCondition>& grid, uint64_t seed,
                                bool with_ci = false);

}  // namespace qoe::synth
