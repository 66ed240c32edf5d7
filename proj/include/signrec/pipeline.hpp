#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "signrec/classify.hpp"
#include "signrec/frames.hpp"

namespace signrec {

struct PipelineConfig {
    int threshold = 150;          // segmentation band, depth layers
    int noise_window = 16;        // nearest-object pooling window, layers
    int min_object_size = 400;    // pixels
    double merge_distance = 80.0; // cluster merge constant, pixels
    int max_iterations = 100;     // k-means cap
    int sample_count = 128;       // boundary samples, power of two
    int coefficient_count = 15;   // descriptor length
    std::optional<double> reject_distance; // optional match rejection, off by default
};

enum class ExecMode { sequential, parallel };

const char* exec_mode_name(ExecMode mode);

struct StageTimings {
    static constexpr int kStageCount = 7;
    // row names as reported, one per pipeline stage
    static const std::array<const char*, kStageCount> kStageNames;

    std::array<double, kStageCount> stage_ms{};
    double total_ms = 0.0; // sum of the stage rows in both modes
    ExecMode mode = ExecMode::sequential;
};

// Full chain: segmentation, clustering, then per hand contour, resampling,
// signature, Fourier description and matching. In parallel mode the two
// per-hand chains run concurrently (per-stage rows then hold the slower
// hand, the critical path) and k-means assignment is data-parallel; the
// recognition output is identical between modes.
std::pair<RecognitionResult, StageTimings> recognize(const DepthFrame& frame,
                                                     const TemplateSet& set, ExecMode mode,
                                                     const PipelineConfig& config = {});

// Enrollment front half: per-hand descriptors in left-to-right order.
std::vector<std::pair<FourierDescriptor, Side>> hand_descriptors(
    const DepthFrame& frame, const PipelineConfig& config = {});

struct BenchResult {
    StageTimings mean; // per-stage arithmetic mean over the runs
    int runs = 0;

    double fps() const { return 1000.0 / mean.total_ms; }
    int fps_truncated() const { return static_cast<int>(fps()); }
    int fps_rounded() const { return static_cast<int>(fps() + 0.5); }
};

BenchResult benchmark(const DepthFrame& frame, const TemplateSet& set, int runs, ExecMode mode,
                      const PipelineConfig& config = {});

struct LabeledFrame {
    DepthFrame frame;
    int number = 0; // ground truth 1..10
    std::string name;
};

struct EvalReport {
    std::array<std::array<int, 10>, 10> confusion{}; // [truth-1][predicted-1]
    std::array<int, 10> stage_errors{};              // frames that failed a stage, by truth
    int total = 0;

    void add(int truth, int predicted);
    void add_error(int truth);

    int correct() const;
    int error_count() const;
    int row_total(int truth) const;
    double accuracy() const; // trace / total

    std::string table_text() const;     // per-number true/false recognition table
    std::string confusion_text() const; // 10x10 matrix, rows = truth
    std::string confusion_csv() const;  // truth label + 10 prediction columns
};

EvalReport evaluate(const std::vector<LabeledFrame>& test_frames, const TemplateSet& set,
                    ExecMode mode = ExecMode::sequential, const PipelineConfig& config = {});

} // namespace signrec
