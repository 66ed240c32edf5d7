// Command-line front end: dataset synthesis, enrollment, recognition,
// evaluation and benchmarking over DFR/PGM depth frames.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "signrec/contour.hpp"
#include "signrec/error.hpp"
#include "signrec/pipeline.hpp"
#include "signrec/segmentation.hpp"

namespace fs = std::filesystem;
using namespace signrec;

namespace {

// exit codes: 0 success, 2 bad arguments, 3 stage error, 4 I/O error
constexpr int kExitBadArgs = 2;
constexpr int kExitStageError = 3;
constexpr int kExitIo = 4;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::bad_magic:
        case Errc::truncated_file:
        case Errc::depth_out_of_range:
        case Errc::unsupported_format:
        case Errc::io_failure:
        case Errc::parse_error:
        case Errc::bad_label:
        case Errc::bad_coefficient_count:
            return kExitIo;
        case Errc::invalid_spec:
            return kExitBadArgs;
        default:
            return kExitStageError;
    }
}

struct RunConfig {
    PipelineConfig pipeline;
    std::string mode = "seq";
    std::uint32_t seed = 1;
    std::string config_file;

    ExecMode exec_mode() const {
        return mode == "par" ? ExecMode::parallel : ExecMode::sequential;
    }
};

void add_config_options(CLI::App* cmd, RunConfig& config, bool with_mode = true) {
    cmd->add_option("--threshold", config.pipeline.threshold,
                    "segmentation band in depth layers")->capture_default_str();
    cmd->add_option("--noise-window", config.pipeline.noise_window,
                    "nearest-object pooling window in layers")->capture_default_str();
    cmd->add_option("--min-object-size", config.pipeline.min_object_size,
                    "minimum object size in pixels")->capture_default_str();
    cmd->add_option("--merge-distance", config.pipeline.merge_distance,
                    "centroid merge constant in pixels")->capture_default_str();
    cmd->add_option("--max-iterations", config.pipeline.max_iterations,
                    "k-means iteration cap")->capture_default_str();
    cmd->add_option("--sample-count", config.pipeline.sample_count,
                    "boundary samples (power of two)")->capture_default_str();
    cmd->add_option("--coefficients", config.pipeline.coefficient_count,
                    "descriptor coefficient count")->capture_default_str();
    if (with_mode)
        cmd->add_option("--mode", config.mode, "execution mode")
            ->check(CLI::IsMember({"seq", "par"}))->capture_default_str();
    cmd->add_option("--config", config.config_file, "key = value config file; flags win");
}

std::string trimmed(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return {};
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

// applies "key = value" lines for every option the command line left alone
void apply_config_file(CLI::App* cmd, RunConfig& config) {
    if (config.config_file.empty())
        return;
    std::ifstream in(config.config_file);
    if (!in)
        throw Error(Errc::io_failure, "cannot open config " + config.config_file);
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos)
            line.resize(comment);
        line = trimmed(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::invalid_spec, config.config_file + ":" +
                                                std::to_string(line_number) +
                                                ": expected key = value");
        std::string key = trimmed(line.substr(0, eq));
        const std::string value = trimmed(line.substr(eq + 1));
        for (char& c : key)
            if (c == '_') c = '-';
        const std::string flag = "--" + key;
        if (cmd->get_option_no_throw(flag) != nullptr && cmd->count(flag) > 0)
            continue; // flags win
        try {
            if (key == "threshold") config.pipeline.threshold = std::stoi(value);
            else if (key == "noise-window") config.pipeline.noise_window = std::stoi(value);
            else if (key == "min-object-size") config.pipeline.min_object_size = std::stoi(value);
            else if (key == "merge-distance") config.pipeline.merge_distance = std::stod(value);
            else if (key == "max-iterations") config.pipeline.max_iterations = std::stoi(value);
            else if (key == "sample-count") config.pipeline.sample_count = std::stoi(value);
            else if (key == "coefficients") config.pipeline.coefficient_count = std::stoi(value);
            else if (key == "seed") config.seed = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "mode") {
                if (value != "seq" && value != "par")
                    throw Error(Errc::invalid_spec, "mode must be seq or par");
                config.mode = value;
            } else {
                throw Error(Errc::invalid_spec, config.config_file + ":" +
                                                    std::to_string(line_number) +
                                                    ": unknown config key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw Error(Errc::invalid_spec, config.config_file + ":" +
                                                std::to_string(line_number) +
                                                ": bad value for '" + key + "'");
        }
    }
}

void echo_config(const RunConfig& config, bool with_mode = true) {
    std::printf("# effective config: threshold=%d noise-window=%d min-object-size=%d "
                "merge-distance=%g max-iterations=%d sample-count=%d coefficients=%d",
                config.pipeline.threshold, config.pipeline.noise_window,
                config.pipeline.min_object_size, config.pipeline.merge_distance,
                config.pipeline.max_iterations, config.pipeline.sample_count,
                config.pipeline.coefficient_count);
    if (with_mode)
        std::printf(" mode=%s", config.mode.c_str());
    std::printf("\n");
}

void print_timings(const StageTimings& timings) {
    std::printf("%-32s %s\n", "Processes", "Time in milliseconds");
    for (int s = 0; s < StageTimings::kStageCount; ++s)
        std::printf("%-32s %9.4f\n", StageTimings::kStageNames[s], timings.stage_ms[s]);
    std::printf("%-32s %9.4f\n", "Total", timings.total_ms);
}

// ---------------------------------------------------------------------------
// manifest
// ---------------------------------------------------------------------------

struct ManifestEntry {
    std::string filename;
    int number = 0;
    std::vector<int> labels; // per hand, left first
    std::uint32_t seed = 0;
};

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::io_failure, "cannot open manifest " + path);
    std::vector<ManifestEntry> entries;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream row(line);
        ManifestEntry entry;
        std::string labels;
        std::string seed;
        if (!(row >> entry.filename >> entry.number >> labels >> seed))
            throw Error(Errc::parse_error,
                        path + ":" + std::to_string(line_number) + ": expected 4 columns");
        std::istringstream label_list(labels);
        std::string token;
        while (std::getline(label_list, token, ','))
            entry.labels.push_back(std::stoi(token));
        entry.seed = static_cast<std::uint32_t>(std::stoul(seed));
        entries.push_back(std::move(entry));
    }
    return entries;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

std::vector<int> parse_numbers(const std::string& text) {
    std::vector<int> numbers;
    std::istringstream parts(text);
    std::string part;
    while (std::getline(parts, part, ',')) {
        const auto dash = part.find('-');
        if (dash == std::string::npos) {
            numbers.push_back(std::stoi(part));
        } else {
            const int lo = std::stoi(part.substr(0, dash));
            const int hi = std::stoi(part.substr(dash + 1));
            for (int n = lo; n <= hi; ++n)
                numbers.push_back(n);
        }
    }
    return numbers;
}

struct SynthArgs {
    std::string out_dir;
    int number = 0;    // 0 = use --all
    bool all = false;
    int count = 1;     // frames per single --number
    int per_number = 1;
    std::string numbers = "1-10";
    std::uint32_t seed = 1;
    double jitter = 0.0;
    std::string hands = "auto";
    std::string side = "alt";
    int hand_depth = 800;
    int palm_radius = 60;
    std::string format = "dfr";
};

int run_synth(const SynthArgs& args) {
    if (!args.all && args.number == 0) {
        std::fprintf(stderr, "synth: need --number or --all\n");
        return kExitBadArgs;
    }
    fs::create_directories(args.out_dir);

    std::vector<int> numbers;
    int per;
    if (args.all) {
        numbers = parse_numbers(args.numbers);
        per = args.per_number;
    } else {
        numbers = {args.number};
        per = args.count;
    }

    std::ofstream manifest(fs::path(args.out_dir) / "labels.tsv", std::ios::trunc);
    if (!manifest)
        throw Error(Errc::io_failure, "cannot create labels.tsv");
    manifest << "# filename\tnumber\thand_labels\tseed\n";

    const FrameFormat format = args.format == "pgm" ? FrameFormat::pgm : FrameFormat::dfr;
    int written = 0;
    for (int number : numbers) {
        for (int i = 0; i < per; ++i) {
            SynthSpec spec;
            spec.number = number;
            if (args.hands == "auto")
                spec.hands = number >= 6 ? Hands::two : Hands::one;
            else
                spec.hands = args.hands == "two" ? Hands::two : Hands::one;
            spec.seed = args.seed + static_cast<std::uint32_t>(written);
            spec.jitter = args.jitter;
            spec.hand_depth = args.hand_depth;
            spec.palm_radius = args.palm_radius;
            if (args.side == "alt")
                spec.side = written % 2 ? HandSide::left : HandSide::right;
            else
                spec.side = args.side == "left" ? HandSide::left : HandSide::right;

            const SynthFrame synth = synth_frame(spec);
            char name[32];
            std::snprintf(name, sizeof name, "frame_%04d.%s", written,
                          format == FrameFormat::pgm ? "pgm" : "dfr");
            write_frame(synth.frame, (fs::path(args.out_dir) / name).string(), format);

            manifest << name << "\t" << number << "\t";
            for (std::size_t h = 0; h < synth.hands.size(); ++h)
                manifest << (h ? "," : "") << synth.hands[h].label;
            manifest << "\t" << spec.seed << "\n";
            ++written;
        }
    }
    if (!manifest)
        throw Error(Errc::io_failure, "write failed for labels.tsv");
    std::printf("wrote %d frames + labels.tsv to %s\n", written, args.out_dir.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// enroll
// ---------------------------------------------------------------------------

int run_enroll(const std::string& frames_dir, std::string manifest_path,
               const std::string& out_path, const RunConfig& config) {
    if (manifest_path.empty())
        manifest_path = (fs::path(frames_dir) / "labels.tsv").string();
    const std::vector<ManifestEntry> entries = read_manifest(manifest_path);
    if (entries.empty()) {
        std::fprintf(stderr, "enroll: manifest lists no frames\n");
        return kExitBadArgs;
    }
    echo_config(config, false);

    TemplateSet set;
    std::vector<std::string> failed;
    for (const ManifestEntry& entry : entries) {
        try {
            const DepthFrame frame =
                read_frame((fs::path(frames_dir) / entry.filename).string());
            const auto hands = hand_descriptors(frame, config.pipeline);
            if (hands.size() != entry.labels.size())
                throw Error(Errc::bad_label,
                            entry.filename + ": manifest lists " +
                                std::to_string(entry.labels.size()) + " hand label(s), found " +
                                std::to_string(hands.size()) + " hand(s)");
            for (std::size_t h = 0; h < hands.size(); ++h) {
                if (entry.labels[h] < 1 || entry.labels[h] > 5)
                    throw Error(Errc::bad_label,
                                entry.filename + ": enrollment labels must be 1..5");
                GestureTemplate t;
                t.label = entry.labels[h];
                t.descriptor = hands[h].first;
                t.signer_id = "s" + std::to_string(entry.seed);
                if (hands[h].second == Side::left) t.hand = TemplateHand::left;
                else if (hands[h].second == Side::right) t.hand = TemplateHand::right;
                set.templates.push_back(std::move(t));
            }
        } catch (const Error& e) {
            failed.push_back(entry.filename + ": " + e.what());
        }
    }

    if (set.templates.empty()) {
        std::fprintf(stderr, "enroll: no frame produced a template\n");
        for (const std::string& f : failed)
            std::fprintf(stderr, "  failed %s\n", f.c_str());
        return kExitStageError;
    }
    save_templates(set, out_path);
    std::printf("enrolled %zu templates from %zu frames into %s\n", set.templates.size(),
                entries.size(), out_path.c_str());
    for (int missing : set.missing_labels())
        std::printf("warning: no template for label %d\n", missing);
    if (!failed.empty()) {
        for (const std::string& f : failed)
            std::fprintf(stderr, "failed %s\n", f.c_str());
        return kExitStageError;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// recognize
// ---------------------------------------------------------------------------

int run_recognize(const std::string& frame_path, const std::string& templates_path,
                  const RunConfig& config, const std::string& histogram_dump,
                  const std::string& overlay_prefix) {
    const DepthFrame frame = read_frame(frame_path);
    const TemplateSet set =
        load_templates(templates_path, config.pipeline.coefficient_count);
    echo_config(config);

    if (!histogram_dump.empty())
        dump_histogram(build_histogram(frame), histogram_dump);
    if (!overlay_prefix.empty()) {
        const DepthHistogram hist = build_histogram(frame);
        const int nearest = find_nearest_object(hist, config.pipeline.min_object_size,
                                                config.pipeline.noise_window);
        const HandMask mask = segment_hands(frame, nearest, config.pipeline.threshold,
                                            config.pipeline.min_object_size);
        ClusterConfig cluster_config;
        cluster_config.merge_distance = config.pipeline.merge_distance;
        cluster_config.max_iterations = config.pipeline.max_iterations;
        const KMeansResult km = kmeans_two(mask, cluster_config);
        for (const HandCluster& cluster : km.clusters) {
            const Contour contour = trace_contour(cluster);
            write_contour_overlay(contour, frame.width, frame.height,
                                  overlay_prefix + "_" + side_name(cluster.side) + ".pgm");
        }
    }

    const auto [result, timings] = recognize(frame, set, config.exec_mode(), config.pipeline);
    std::printf("number: %d\n", result.number);
    std::printf("mode: %s\n", result.mode == RecognitionMode::both ? "both" : "single");
    for (const HandLabel& hand : result.hand_labels)
        std::printf("hand %s: label %d distance %.6g\n", side_name(hand.side), hand.label,
                    hand.distance);
    print_timings(timings);
    return 0;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

int run_eval(const std::string& frames_dir, std::string manifest_path,
             const std::string& templates_path, const RunConfig& config,
             const std::string& csv_path) {
    if (manifest_path.empty())
        manifest_path = (fs::path(frames_dir) / "labels.tsv").string();
    const std::vector<ManifestEntry> entries = read_manifest(manifest_path);
    const TemplateSet set =
        load_templates(templates_path, config.pipeline.coefficient_count);
    echo_config(config);

    // frames are loaded one at a time; the report accumulates as evaluate() would
    EvalReport report;
    for (const ManifestEntry& entry : entries) {
        const DepthFrame frame = read_frame((fs::path(frames_dir) / entry.filename).string());
        try {
            const auto [result, timings] =
                recognize(frame, set, config.exec_mode(), config.pipeline);
            report.add(entry.number, result.number);
        } catch (const Error&) {
            report.add_error(entry.number);
        }
    }
    std::printf("%s", report.table_text().c_str());
    std::printf("\nconfusion matrix (rows = truth):\n%s", report.confusion_text().c_str());
    std::printf("overall accuracy: %d/%d = %.2f%%\n", report.correct(), report.total,
                100.0 * report.accuracy());
    if (report.error_count() > 0)
        std::printf("frames failing a stage: %d (counted as misclassifications)\n",
                    report.error_count());
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path, std::ios::trunc);
        if (!csv)
            throw Error(Errc::io_failure, "cannot create " + csv_path);
        csv << report.confusion_csv();
        std::printf("confusion CSV written to %s\n", csv_path.c_str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

int run_bench(const std::string& frame_path, const std::string& templates_path, int runs,
              const RunConfig& config) {
    const DepthFrame frame = read_frame(frame_path);
    const TemplateSet set =
        load_templates(templates_path, config.pipeline.coefficient_count);
    echo_config(config);

    const BenchResult bench = benchmark(frame, set, runs, config.exec_mode(), config.pipeline);
    std::printf("mode: %s, runs: %d\n", exec_mode_name(config.exec_mode()), bench.runs);
    print_timings(bench.mean);
    std::printf("FPS: %d (truncated) / %d (rounded)\n", bench.fps_truncated(),
                bench.fps_rounded());
    std::printf("30 FPS real-time line: %s\n", bench.fps() >= 30.0 ? "met" : "missed");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"number-sign recognition over depth frames"};
    app.require_subcommand(1);

    // synth
    SynthArgs synth_args;
    RunConfig synth_config;
    CLI::App* synth = app.add_subcommand("synth", "generate synthetic gesture frames");
    synth->add_option("--out-dir", synth_args.out_dir, "output directory")->required();
    synth->add_option("--number", synth_args.number, "gesture number 1..10");
    synth->add_flag("--all", synth_args.all, "generate batches over --numbers");
    synth->add_option("--count", synth_args.count, "frames for a single --number");
    synth->add_option("--per-number", synth_args.per_number, "frames per number with --all");
    synth->add_option("--numbers", synth_args.numbers, "number list, e.g. 1-5 or 2,4,7");
    synth->add_option("--seed", synth_args.seed, "base seed; frame i uses seed+i");
    synth->add_option("--jitter", synth_args.jitter, "shape perturbation in pixels");
    synth->add_option("--hands", synth_args.hands, "auto|one|two")
        ->check(CLI::IsMember({"auto", "one", "two"}));
    synth->add_option("--side", synth_args.side, "left|right|alt for one-hand frames")
        ->check(CLI::IsMember({"left", "right", "alt"}));
    synth->add_option("--hand-depth", synth_args.hand_depth, "hand surface depth layer");
    synth->add_option("--palm-radius", synth_args.palm_radius, "palm radius in pixels");
    synth->add_option("--format", synth_args.format, "dfr|pgm")
        ->check(CLI::IsMember({"dfr", "pgm"}));
    synth->add_option("--config", synth_config.config_file,
                      "key = value config file; flags win");

    // enroll
    std::string enroll_dir, enroll_manifest, enroll_out;
    RunConfig enroll_config;
    CLI::App* enroll = app.add_subcommand("enroll", "build a template file from frames");
    enroll->add_option("--frames", enroll_dir, "frame directory")->required();
    enroll->add_option("--manifest", enroll_manifest, "labels.tsv (default <frames>/labels.tsv)");
    enroll->add_option("--out", enroll_out, "template file to write")->required();
    add_config_options(enroll, enroll_config, false);

    // recognize
    std::string rec_frame, rec_templates, rec_hist, rec_overlay;
    RunConfig rec_config;
    CLI::App* rec = app.add_subcommand("recognize", "recognize one frame");
    rec->add_option("--frame", rec_frame, "DFR or PGM frame")->required();
    rec->add_option("--templates", rec_templates, "template file")->required();
    rec->add_option("--dump-histogram", rec_hist, "write the depth histogram to a file");
    rec->add_option("--overlay-prefix", rec_overlay, "write contour overlay PGMs");
    add_config_options(rec, rec_config);

    // eval
    std::string eval_dir, eval_manifest, eval_templates, eval_csv;
    RunConfig eval_config;
    CLI::App* eval = app.add_subcommand("eval", "evaluate a directory of frames");
    eval->add_option("--frames", eval_dir, "frame directory")->required();
    eval->add_option("--manifest", eval_manifest, "labels.tsv (default <frames>/labels.tsv)");
    eval->add_option("--templates", eval_templates, "template file")->required();
    eval->add_option("--csv", eval_csv, "write the confusion matrix CSV here");
    add_config_options(eval, eval_config);

    // bench
    std::string bench_frame, bench_templates;
    int bench_runs = 50;
    RunConfig bench_config;
    CLI::App* bench = app.add_subcommand("bench", "per-stage latency benchmark");
    bench->add_option("--frame", bench_frame, "DFR or PGM frame")->required();
    bench->add_option("--templates", bench_templates, "template file")->required();
    bench->add_option("--runs", bench_runs, "number of runs")->capture_default_str();
    add_config_options(bench, bench_config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadArgs;
    }

    try {
        if (synth->parsed()) {
            apply_config_file(synth, synth_config);
            if (synth->count("--seed") == 0 && synth_config.seed != 1)
                synth_args.seed = synth_config.seed;
            return run_synth(synth_args);
        }
        if (enroll->parsed()) {
            apply_config_file(enroll, enroll_config);
            return run_enroll(enroll_dir, enroll_manifest, enroll_out, enroll_config);
        }
        if (rec->parsed()) {
            apply_config_file(rec, rec_config);
            return run_recognize(rec_frame, rec_templates, rec_config, rec_hist, rec_overlay);
        }
        if (eval->parsed()) {
            apply_config_file(eval, eval_config);
            return run_eval(eval_dir, eval_manifest, eval_templates, eval_config, eval_csv);
        }
        if (bench->parsed()) {
            apply_config_file(bench, bench_config);
            return run_bench(bench_frame, bench_templates, bench_runs, bench_config);
        }
    } catch (const Error& e) {
        if (!e.stage().empty())
            std::fprintf(stderr, "error in stage '%s': %s\n", e.stage().c_str(), e.what());
        else
            std::fprintf(stderr, "error: %s [%s]\n", e.what(), errc_name(e.code()));
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return kExitBadArgs;
}
