#include "signrec/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <numeric>
#include <sstream>

#include "signrec/contour.hpp"
#include "signrec/error.hpp"
#include "signrec/segmentation.hpp"

namespace signrec {

const char* exec_mode_name(ExecMode mode) {
    return mode == ExecMode::sequential ? "sequential" : "parallel";
}

const std::array<const char*, StageTimings::kStageCount> StageTimings::kStageNames = {
    "Hand Segmentation",
    "K-Means Calculation",
    "Hand Contour Tracing",
    "Normalize Image (128 points)",
    "Centroid Distance Signature",
    "Discrete Fourier Description",
    "Gesture Classification",
};

namespace {

using Clock = std::chrono::steady_clock;

// runs f, adds its wall time to slot, tags stage-level errors with name
template <typename F>
auto timed(const char* name, double& slot, F&& f) -> decltype(f()) {
    const auto t0 = Clock::now();
    try {
        auto result = f();
        slot += std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        return result;
    } catch (Error& e) {
        if (e.stage().empty())
            e.set_stage(name);
        throw;
    }
}

// contour through classification for one hand; ms holds the five per-hand
// stage durations
HandLabel process_hand(const HandCluster& cluster, const TemplateSet& set,
                       const PipelineConfig& config, double* ms) {
    const Contour contour =
        timed(StageTimings::kStageNames[2], ms[0], [&] { return trace_contour(cluster); });
    const SampledBoundary boundary = timed(StageTimings::kStageNames[3], ms[1], [&] {
        return equal_angle_sample(contour, cluster.centroid, config.sample_count);
    });
    const std::vector<double> signature = timed(StageTimings::kStageNames[4], ms[2], [&] {
        return centroid_distance_signature(boundary);
    });
    const FourierDescriptor fd = timed(StageTimings::kStageNames[5], ms[3], [&] {
        return descriptor(signature, config.coefficient_count);
    });
    HandLabel label = timed(StageTimings::kStageNames[6], ms[4], [&] {
        return classify_hand(fd, set, config.reject_distance);
    });
    label.side = cluster.side;
    return label;
}

} // namespace

std::pair<RecognitionResult, StageTimings> recognize(const DepthFrame& frame,
                                                     const TemplateSet& set, ExecMode mode,
                                                     const PipelineConfig& config) {
    StageTimings timings;
    timings.mode = mode;

    const HandMask mask = timed(StageTimings::kStageNames[0], timings.stage_ms[0], [&] {
        const DepthHistogram hist = build_histogram(frame);
        const int nearest = find_nearest_object(hist, config.min_object_size, config.noise_window);
        return segment_hands(frame, nearest, config.threshold, config.min_object_size);
    });

    ClusterConfig cluster_config;
    cluster_config.merge_distance = config.merge_distance;
    cluster_config.max_iterations = config.max_iterations;
    cluster_config.parallel = mode == ExecMode::parallel;
    const KMeansResult km = timed(StageTimings::kStageNames[1], timings.stage_ms[1],
                                  [&] { return kmeans_two(mask, cluster_config); });

    std::vector<HandLabel> hands(km.clusters.size());
    if (mode == ExecMode::parallel && km.clusters.size() == 2) {
        double ms_first[5] = {}, ms_second[5] = {};
        auto second = std::async(std::launch::async, [&] {
            return process_hand(km.clusters[1], set, config, ms_second);
        });
        hands[0] = process_hand(km.clusters[0], set, config, ms_first);
        hands[1] = second.get();
        for (int s = 0; s < 5; ++s)
            timings.stage_ms[2 + s] = std::max(ms_first[s], ms_second[s]);
    } else {
        double ms[5] = {};
        for (std::size_t i = 0; i < km.clusters.size(); ++i)
            hands[i] = process_hand(km.clusters[i], set, config, ms);
        for (int s = 0; s < 5; ++s)
            timings.stage_ms[2 + s] = ms[s];
    }

    RecognitionResult result = combine(hands);
    timings.total_ms = std::accumulate(timings.stage_ms.begin(), timings.stage_ms.end(), 0.0);
    return {std::move(result), timings};
}

std::vector<std::pair<FourierDescriptor, Side>> hand_descriptors(const DepthFrame& frame,
                                                                 const PipelineConfig& config) {
    const DepthHistogram hist = build_histogram(frame);
    const int nearest = find_nearest_object(hist, config.min_object_size, config.noise_window);
    const HandMask mask = segment_hands(frame, nearest, config.threshold, config.min_object_size);
    ClusterConfig cluster_config;
    cluster_config.merge_distance = config.merge_distance;
    cluster_config.max_iterations = config.max_iterations;
    const KMeansResult km = kmeans_two(mask, cluster_config);

    std::vector<std::pair<FourierDescriptor, Side>> out;
    for (const HandCluster& cluster : km.clusters) {
        const Contour contour = trace_contour(cluster);
        const SampledBoundary boundary =
            equal_angle_sample(contour, cluster.centroid, config.sample_count);
        out.emplace_back(descriptor(centroid_distance_signature(boundary),
                                    config.coefficient_count),
                         cluster.side);
    }
    return out;
}

BenchResult benchmark(const DepthFrame& frame, const TemplateSet& set, int runs, ExecMode mode,
                      const PipelineConfig& config) {
    if (runs < 1)
        throw Error(Errc::invalid_spec, "benchmark needs at least one run");
    BenchResult bench;
    bench.runs = runs;
    bench.mean.mode = mode;
    for (int r = 0; r < runs; ++r) {
        const auto [result, timings] = recognize(frame, set, mode, config);
        (void)result;
        for (int s = 0; s < StageTimings::kStageCount; ++s)
            bench.mean.stage_ms[s] += timings.stage_ms[s];
        bench.mean.total_ms += timings.total_ms;
    }
    for (int s = 0; s < StageTimings::kStageCount; ++s)
        bench.mean.stage_ms[s] /= runs;
    bench.mean.total_ms /= runs;
    return bench;
}

void EvalReport::add(int truth, int predicted) {
    ++total;
    if (truth >= 1 && truth <= 10 && predicted >= 1 && predicted <= 10)
        ++confusion[truth - 1][predicted - 1];
}

void EvalReport::add_error(int truth) {
    ++total;
    if (truth >= 1 && truth <= 10)
        ++stage_errors[truth - 1];
}

int EvalReport::correct() const {
    int trace = 0;
    for (int n = 0; n < 10; ++n)
        trace += confusion[n][n];
    return trace;
}

int EvalReport::error_count() const {
    int errors = 0;
    for (int n = 0; n < 10; ++n)
        errors += stage_errors[n];
    return errors;
}

int EvalReport::row_total(int truth) const {
    int sum = stage_errors[truth - 1];
    for (int p = 0; p < 10; ++p)
        sum += confusion[truth - 1][p];
    return sum;
}

double EvalReport::accuracy() const {
    return total == 0 ? 0.0 : static_cast<double>(correct()) / total;
}

std::string EvalReport::table_text() const {
    std::ostringstream out;
    out << "Number Gesture\tTrue Recognition\tFalse Recognition\n";
    double rate_sum = 0.0;
    int rated = 0;
    for (int n = 1; n <= 10; ++n) {
        const int row = row_total(n);
        out << n << "\t";
        if (row == 0) {
            out << "-\t-\n";
            continue;
        }
        const double rate = 100.0 * confusion[n - 1][n - 1] / row;
        const int true_pct = static_cast<int>(std::lround(rate));
        out << true_pct << "%\t" << (100 - true_pct) << "%\n";
        rate_sum += rate;
        ++rated;
    }
    if (rated > 0) {
        const int avg = static_cast<int>(std::lround(rate_sum / rated));
        out << "Average\t" << avg << "%\t" << (100 - avg) << "%\n";
    }
    return out.str();
}

std::string EvalReport::confusion_text() const {
    std::ostringstream out;
    const bool with_errors = error_count() > 0;
    out << "truth";
    for (int p = 1; p <= 10; ++p)
        out << "\t" << p;
    if (with_errors)
        out << "\terror";
    out << "\n";
    for (int n = 1; n <= 10; ++n) {
        out << n;
        for (int p = 1; p <= 10; ++p)
            out << "\t" << confusion[n - 1][p - 1];
        if (with_errors)
            out << "\t" << stage_errors[n - 1];
        out << "\n";
    }
    return out.str();
}

std::string EvalReport::confusion_csv() const {
    std::ostringstream out;
    out << "truth";
    for (int p = 1; p <= 10; ++p)
        out << "," << p;
    out << "\n";
    for (int n = 1; n <= 10; ++n) {
        out << n;
        for (int p = 1; p <= 10; ++p)
            out << "," << confusion[n - 1][p - 1];
        out << "\n";
    }
    return out.str();
}

EvalReport evaluate(const std::vector<LabeledFrame>& test_frames, const TemplateSet& set,
                    ExecMode mode, const PipelineConfig& config) {
    if (test_frames.empty())
        throw Error(Errc::invalid_spec, "evaluation needs at least one frame");
    EvalReport report;
    for (const LabeledFrame& item : test_frames) {
        try {
            const auto [result, timings] = recognize(item.frame, set, mode, config);
            (void)timings;
            report.add(item.number, result.number);
        } catch (const Error&) {
            report.add_error(item.number);
        }
    }
    return report;
}

} // namespace signrec
