#include "topoemo/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "topoemo/dataset.hpp"
#include "topoemo/errors.hpp"
#include "topoemo/mlp.hpp"
#include "topoemo/signature.hpp"

namespace topoemo::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Split size used for the full 1344-video corpus.
constexpr std::size_t kReferenceCorpus = 1344;
constexpr std::size_t kReferenceTrain = 944;

struct FeatureFlags {
  std::size_t frames = 9;
  std::size_t audio_points = 10000;
  std::size_t landmarks = kDefaultLandmarks;
  bool h0_only = false;
  bool ordinal = false;

  SignatureOptions options(Execution exec) const {
    SignatureOptions o;
    o.frames = frames;
    o.audio_points = audio_points;
    o.entropy = h0_only ? EntropyMode::h0_only : EntropyMode::pooled;
    o.coordinates = ordinal ? DiagramCoordinates::ordinal : DiagramCoordinates::values;
    o.execution = exec;
    return o;
  }
};

void add_feature_flags(CLI::App* cmd, FeatureFlags& f) {
  cmd->add_option("--frames", f.frames, "Equally spaced frames per video")->check(CLI::PositiveNumber);
  cmd->add_option("--audio-points", f.audio_points, "Audio subsample size")->check(CLI::PositiveNumber);
  cmd->add_option("--landmarks", f.landmarks, "Landmarks per frame")->check(CLI::PositiveNumber);
  cmd->add_flag("--h0-only", f.h0_only, "Entropy of connected components only");
  cmd->add_flag("--ordinal", f.ordinal, "Record diagrams in sublevel steps instead of filter values");
}

json diagram_json(const PersistenceDiagram& d) {
  json pts = json::array();
  for (const auto& p : d.points) {
    pts.push_back({p.dim, p.birth, std::isinf(p.death) ? json("inf") : json(p.death)});
  }
  return pts;
}

json matrix_json(const std::array<std::array<long, kNumClasses>, kNumClasses>& m) {
  json rows = json::array();
  for (const auto& r : m) rows.push_back(r);
  return rows;
}

json class_names() {
  json names = json::array();
  for (auto n : kEmotionNames) names.push_back(std::string(n));
  return names;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

std::vector<SignatureRow> read_signatures(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open signature file " + path.string());
  auto rows = read_signature_csv(in);
  if (rows.empty()) throw InputError(path.string() + ": no signatures");
  return rows;
}

LabelledSet labelled(std::span<const SignatureRow> rows, std::span<const std::size_t> idx) {
  LabelledSet set;
  for (std::size_t i : idx) {
    const auto& r = rows[i];
    if (!r.signature.label) throw InputError("signature " + r.video_id + " has no label");
    set.x.push_back(r.signature.features());
    set.y.push_back(emotion_index(*r.signature.label));
  }
  return set;
}

// Everything `inspect` reports about one video.
json analyse_video(const VideoRecord& video, const FeatureFlags& flags, std::ostream* cells_out) {
  const auto opts = flags.options(Execution::serial);
  auto picked = select_frames(video.frames.size(), opts.frames);
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
  std::vector<LandmarkFrame> chosen;
  for (std::size_t i : picked) chosen.push_back(video.frames[i]);
  const CellComplex complex = build_stacked_complex(chosen);
  if (cells_out) write_cells(*cells_out, complex);

  json report;
  report["video_id"] = video.video_id;
  report["label"] = std::string(emotion_name(video.emotion));
  report["frames_used"] = picked;
  json counts = json::array();
  for (int d = 0; d <= complex.dimension(); ++d) counts.push_back(complex.count(d));
  report["cells_per_dim"] = counts;
  report["euler_characteristic"] = euler_characteristic(complex);

  auto summarise = [&](const Filtration& f, json& slot) {
    auto diagram = compute_persistence(f, opts.coordinates);
    if (opts.entropy == EntropyMode::h0_only) diagram = restrict_to_dimension(diagram, 0);
    const auto capped = cap_infinite(diagram, cap_value(f, opts.coordinates));
    slot["label"] = std::string(to_string(f.label));
    slot["betti"] = essential_counts(diagram);
    slot["diagram"] = diagram_json(capped);
    slot["entropy"] = persistent_entropy(capped);
    return slot["entropy"].get<double>();
  };

  json filtrations = json::array();
  std::array<double, kSignatureSize> sig{};
  const auto filters = plane_filters(complex);
  for (std::size_t k = 0; k < filters.size(); ++k) {
    json slot;
    sig[k] = summarise(lower_star_filtration(complex, filters[k]), slot);
    filtrations.push_back(slot);
  }
  report["filtrations"] = filtrations;
  if (!flags.h0_only) {
    const auto betti = filtrations[0]["betti"].get<std::vector<long>>();
    long alternating = 0;
    for (std::size_t d = 0; d < betti.size(); ++d) alternating += (d % 2 == 0 ? 1 : -1) * betti[d];
    report["alternating_betti_sum"] = alternating;
  }

  const auto path = build_path_complex(subsample_signal(video.audio, opts.audio_points));
  const FilterFunction amplitude{FilterLabel::audio, path.vertex_values};
  json audio;
  try {
    sig[8] = summarise(lower_star_filtration(path.complex, amplitude), audio);
  } catch (const DegenerateInputError& e) {
    throw DegenerateInputError(std::string("audio feature: ") + e.what());
  }
  audio["samples_used"] = path.vertex_values.size();
  report["audio"] = audio;
  report["signature"] = sig;
  return report;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  fs::path out;
  std::size_t per_class = 30;
  std::uint64_t seed = 0;
  SynthOptions opts;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  const auto videos = synth_dataset(a.seed, a.per_class, a.opts);
  const auto entries = write_corpus(a.out, videos);
  out << "wrote " << entries.size() << " videos to " << a.out.string() << '\n';
  return kOk;
}

// -------------------------------------------------------------- extract

struct ExtractArgs {
  fs::path manifest;
  std::string out = "-";
  fs::path report;
  fs::path debug_dir;
  FeatureFlags flags;
};

int cmd_extract(const ExtractArgs& a, std::ostream& out, std::ostream& err) {
  const auto entries = read_manifest(a.manifest);
  const long n = static_cast<long>(entries.size());
  std::vector<std::optional<SignatureRow>> rows(entries.size());
  std::vector<std::string> failure(entries.size());
  std::vector<std::string> skipped(entries.size());
  if (!a.debug_dir.empty()) fs::create_directories(a.debug_dir);
  const auto opts = a.flags.options(Execution::serial);

#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    const auto& e = entries[i];
    try {
      const auto meta = parse_ravdess_filename(e.raw_filename);
      if (!meta.included) {
        skipped[i] = meta.exclusion_reason;
        continue;
      }
      const VideoRecord video = load_video(e, a.flags.landmarks);
      rows[i] = SignatureRow{video.video_id, extract_signature(video, opts)};
      if (!a.debug_dir.empty()) {
        std::ofstream cells(a.debug_dir / (video.video_id + ".cells"));
        write_text(a.debug_dir / (video.video_id + ".json"), analyse_video(video, a.flags, &cells).dump(1) + "\n");
      }
    } catch (const std::exception& ex) {
      failure[i] = ex.what();
    }
  }

  std::vector<SignatureRow> done;
  json failures = json::array();
  json excluded = json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (rows[i]) done.push_back(*rows[i]);
    if (!failure[i].empty()) {
      err << "extract: " << entries[i].video_id << ": " << failure[i] << '\n';
      failures.push_back({{"video_id", entries[i].video_id}, {"reason", failure[i]}});
    }
    if (!skipped[i].empty()) excluded.push_back({{"video_id", entries[i].video_id}, {"reason", skipped[i]}});
  }

  if (a.out == "-") {
    write_signature_csv(out, done);
  } else {
    std::ofstream csv(a.out);
    if (!csv) throw InputError("cannot write " + a.out);
    write_signature_csv(csv, done);
  }
  if (!a.report.empty()) {
    json report{{"manifest_entries", entries.size()},
                {"signatures", done.size()},
                {"excluded", excluded},
                {"failures", failures}};
    write_text(a.report, report.dump(2) + "\n");
  }
  err << "extract: " << done.size() << " signatures, " << excluded.size() << " excluded, " << failures.size()
      << " failed\n";
  return failures.empty() ? kOk : kPartialFailure;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  fs::path signatures;
  fs::path out_dir;
  std::optional<std::size_t> train_n;
  std::optional<double> train_fraction;
  TrainConfig cfg;
};

std::size_t resolve_train_size(const TrainArgs& a, std::size_t corpus, std::ostream& err) {
  if (a.train_n) return *a.train_n;
  if (a.train_fraction) {
    if (*a.train_fraction <= 0.0 || *a.train_fraction > 1.0) throw InputError("--train-fraction must be in (0, 1]");
    return static_cast<std::size_t>(std::lround(*a.train_fraction * static_cast<double>(corpus)));
  }
  if (corpus >= kReferenceCorpus) return kReferenceTrain;
  const auto n = static_cast<std::size_t>(
      std::lround(static_cast<double>(corpus) * kReferenceTrain / static_cast<double>(kReferenceCorpus)));
  err << "train: corpus of " << corpus << " is smaller than " << kReferenceCorpus << "; training on " << n
      << " (same 944:400 ratio)\n";
  return n;
}

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  const auto rows = read_signatures(a.signatures);
  std::vector<int> labels;
  for (const auto& r : rows) {
    if (!r.signature.label) throw InputError("signature " + r.video_id + " has no label");
    labels.push_back(emotion_index(*r.signature.label));
  }
  const std::size_t train_n = resolve_train_size(a, rows.size(), err);
  if (train_n > rows.size()) {
    throw InputError("train size " + std::to_string(train_n) + " exceeds corpus size " + std::to_string(rows.size()));
  }
  const Split split = split_dataset(labels, train_n, a.cfg.seed);
  const LabelledSet train_set = labelled(rows, split.train);
  const LabelledSet test_set = labelled(rows, split.test);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (std::find(train_set.y.begin(), train_set.y.end(), static_cast<int>(c)) == train_set.y.end()) {
      throw InputError("class " + std::string(kEmotionNames[c]) + " has no training examples");
    }
  }
  if (a.cfg.repetitions < 1) throw InputError("--repetitions must be at least 1");

  fs::create_directories(a.out_dir);
  {
    std::ofstream s(a.out_dir / "split.csv");
    s << "video_id,set\n";
    for (std::size_t i : split.train) s << rows[i].video_id << ",train\n";
    for (std::size_t i : split.test) s << rows[i].video_id << ",test\n";
    std::ofstream tr(a.out_dir / "train_signatures.csv"), te(a.out_dir / "test_signatures.csv");
    for (std::size_t i : split.train) tr << format_signature_row(rows[i]) << '\n';
    for (std::size_t i : split.test) te << format_signature_row(rows[i]) << '\n';
  }

  const int reps = a.cfg.repetitions;
  std::vector<TrainResult> results(reps);
  std::vector<std::string> errors(reps);
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < reps; ++r) {
    try {
      TrainConfig cfg = a.cfg;
      cfg.seed = a.cfg.seed + static_cast<std::uint64_t>(r);
      results[r] = train(train_set, cfg, test_set.x.empty() ? nullptr : &test_set);
    } catch (const std::exception& ex) {
      errors[r] = ex.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("training failed: " + e);

  const bool has_test = !test_set.x.empty();
  json per_rep = json::array();
  std::vector<double> test_acc;
  int best = 0;
  for (int r = 0; r < reps; ++r) {
    const auto& res = results[r];
    TrainConfig cfg = a.cfg;
    cfg.seed = a.cfg.seed + static_cast<std::uint64_t>(r);
    const std::string stem = "rep" + std::to_string(r);
    save_model(a.out_dir / ("model_" + stem + ".txt"), Model{res.params, cfg, res.scaler});
    const LabelledSet scaled_test = res.scaler.apply(test_set);
    std::ostringstream hist;
    hist.precision(17);
    hist << "epoch,train_accuracy,train_loss,test_accuracy\n";
    for (std::size_t e = 0; e < res.history.size(); ++e) {
      const auto& h = res.history[e];
      hist << e + 1 << ',' << h.train_accuracy << ',' << h.train_loss << ',';
      if (has_test) hist << h.test_accuracy;
      hist << '\n';
    }
    write_text(a.out_dir / ("history_" + stem + ".csv"), hist.str());

    json rec{{"repetition", r},
             {"seed", cfg.seed},
             {"final_train_accuracy", res.history.back().train_accuracy},
             {"final_train_loss", res.history.back().train_loss}};
    if (has_test) {
      const double acc = accuracy(res.params, scaled_test);
      test_acc.push_back(acc);
      if (acc > test_acc[best]) best = r;
      rec["test_accuracy"] = acc;
      rec["confusion_matrix"] = matrix_json(confusion_matrix(res.params, scaled_test));
    }
    per_rep.push_back(rec);
  }

  json report{{"classes", class_names()},
              {"corpus_size", rows.size()},
              {"train_size", train_set.x.size()},
              {"test_size", test_set.x.size()},
              {"epochs", a.cfg.epochs},
              {"batch_size", a.cfg.batch_size},
              {"dropout", a.cfg.dropout},
              {"learning_rate", a.cfg.adam.learning_rate},
              {"standardize", a.cfg.standardize},
              {"seed", a.cfg.seed},
              {"repetitions", per_rep},
              {"reference_targets", {{"mean_test_accuracy", 0.9597}, {"max_test_accuracy", 0.9802}}}};
  std::ostringstream summary;
  summary << "trained " << reps << " repetition(s) of " << a.cfg.epochs << " epochs on " << train_set.x.size()
          << " signatures\n";
  if (has_test) {
    const double mean = std::accumulate(test_acc.begin(), test_acc.end(), 0.0) / static_cast<double>(reps);
    const double max = *std::max_element(test_acc.begin(), test_acc.end());
    report["mean_test_accuracy"] = mean;
    report["max_test_accuracy"] = max;
    report["best_repetition"] = best;
    report["confusion_matrix"] = per_rep[best]["confusion_matrix"];
    summary << "test accuracy: mean " << mean << ", max " << max << " (repetition " << best << ")\n";
    summary << "confusion matrix of repetition " << best << " (rows true, columns predicted):\n";
    for (std::size_t i = 0; i < kNumClasses; ++i) {
      summary << "  " << kEmotionNames[i];
      for (std::size_t j = 0; j < kNumClasses; ++j) summary << ' ' << per_rep[best]["confusion_matrix"][i][j];
      summary << '\n';
    }
  } else {
    report["mean_test_accuracy"] = nullptr;
    report["max_test_accuracy"] = nullptr;
    summary << "no test set\n";
  }
  write_text(a.out_dir / "report.json", report.dump(2) + "\n");
  write_text(a.out_dir / "summary.txt", summary.str());
  out << summary.str();
  return kOk;
}

// ----------------------------------------------------------------- eval

int cmd_eval(const fs::path& model_path, const fs::path& sig_path, const fs::path& report_path, std::ostream& out) {
  const Model model = load_model(model_path);
  const auto rows = read_signatures(sig_path);
  std::vector<std::size_t> all(rows.size());
  std::iota(all.begin(), all.end(), 0);
  const LabelledSet set = model.scaler.apply(labelled(rows, all));
  const auto cm = confusion_matrix(model.params, set);
  long hits = 0;
  for (std::size_t i = 0; i < kNumClasses; ++i) hits += cm[i][i];
  json report{{"classes", class_names()},
              {"examples", set.x.size()},
              {"accuracy", static_cast<double>(hits) / static_cast<double>(set.x.size())},
              {"confusion_matrix", matrix_json(cm)}};
  if (!report_path.empty()) write_text(report_path, report.dump(2) + "\n");
  out << report.dump(2) << '\n';
  return kOk;
}

// -------------------------------------------------------------- predict

int cmd_predict(const fs::path& model_path, const std::vector<double>& features, const fs::path& sig_path,
                std::ostream& out) {
  const Model model = load_model(model_path);
  std::vector<std::pair<std::string, Features>> inputs;
  if (!features.empty()) {
    if (features.size() != kInputSize) {
      throw InputError("--features needs " + std::to_string(kInputSize) + " values, got " +
                       std::to_string(features.size()));
    }
    Features f{};
    std::copy(features.begin(), features.end(), f.begin());
    inputs.emplace_back("", f);
  } else if (!sig_path.empty()) {
    for (const auto& r : read_signatures(sig_path)) inputs.emplace_back(r.video_id, r.signature.features());
  } else {
    throw InputError("predict needs --features or --signatures");
  }
  for (const auto& [id, x] : inputs) {
    const auto p = model.probabilities(x);
    json probs;
    for (std::size_t c = 0; c < kNumClasses; ++c) probs[std::string(kEmotionNames[c])] = p[c];
    const auto top = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    json line{{"label", std::string(kEmotionNames[top])}, {"probabilities", probs}};
    if (!id.empty()) line["video_id"] = id;
    out << line.dump() << '\n';
  }
  return kOk;
}

// -------------------------------------------------------------- inspect

int cmd_inspect(const fs::path& manifest, const std::string& video_id, const FeatureFlags& flags,
                const fs::path& cells_path, std::ostream& out) {
  const auto entries = read_manifest(manifest);
  const auto it =
      std::find_if(entries.begin(), entries.end(), [&](const ManifestEntry& e) { return e.video_id == video_id; });
  if (it == entries.end()) throw InputError("unknown video id " + video_id);
  const VideoRecord video = load_video(*it, flags.landmarks);
  std::ofstream cells;
  if (!cells_path.empty()) {
    cells.open(cells_path);
    if (!cells) throw InputError("cannot write " + cells_path.string());
  }
  out << analyse_video(video, flags, cells_path.empty() ? nullptr : &cells).dump(2) << '\n';
  return kOk;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topological signatures and MLP classification of audio-visual emotion clips", "topoemo"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option values; flags override it");
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic separable corpus");
  c_synth->add_option("--out", synth.out, "Output directory")->required();
  c_synth->add_option("--per-class", synth.per_class, "Videos per emotion (at most 192)")->check(CLI::Range(1, 192));
  c_synth->add_option("--seed", synth.seed, "Random seed");
  c_synth->add_option("--frames", synth.opts.frames, "Frames per video")->check(CLI::PositiveNumber);
  c_synth->add_option("--samples", synth.opts.samples, "Audio samples per video")->check(CLI::Range(10, 1 << 26));
  c_synth->add_option("--sample-rate", synth.opts.sample_rate, "Audio sample rate")->check(CLI::PositiveNumber);
  c_synth->add_option("--tracking-noise", synth.opts.tracking_noise, "Per-frame landmark noise (sd, pixels)")
      ->check(CLI::NonNegativeNumber);

  ExtractArgs extract;
  auto* c_extract = app.add_subcommand("extract", "Compute one 9-value signature per manifest video");
  c_extract->add_option("--manifest", extract.manifest, "Manifest CSV")->required();
  c_extract->add_option("--out", extract.out, "Signature CSV ('-' for stdout)");
  c_extract->add_option("--report", extract.report, "JSON report with exclusions and failures");
  c_extract->add_option("--debug-dir", extract.debug_dir, "Write per-video cells and diagrams here");
  add_feature_flags(c_extract, extract.flags);

  TrainArgs tr;
  auto* c_train = app.add_subcommand("train", "Train repeated seeded MLPs on a signature CSV");
  c_train->add_option("--signatures", tr.signatures, "Signature CSV")->required();
  c_train->add_option("--out", tr.out_dir, "Output directory for models and reports")->required();
  auto* o_n = c_train->add_option("--train-n", tr.train_n, "Training-set size (default 944, scaled for small corpora)");
  c_train->add_option("--train-fraction", tr.train_fraction, "Training-set fraction")->excludes(o_n);
  c_train->add_option("--epochs", tr.cfg.epochs, "Epochs")->check(CLI::PositiveNumber);
  c_train->add_option("--batch-size", tr.cfg.batch_size, "Mini-batch size")->check(CLI::PositiveNumber);
  c_train->add_option("--dropout", tr.cfg.dropout, "Dropout after the first hidden layer")->check(CLI::Range(0.0, 0.99));
  c_train->add_option("--learning-rate", tr.cfg.adam.learning_rate, "Adam step size")->check(CLI::PositiveNumber);
  c_train->add_option("--repetitions", tr.cfg.repetitions, "Independent seeded trainings")->check(CLI::PositiveNumber);
  c_train->add_option("--seed", tr.cfg.seed, "Split seed; repetition r trains with seed + r");
  c_train->add_flag("--standardize,!--no-standardize", tr.cfg.standardize,
                    "Z-score features with training-set statistics (default on)");

  fs::path model_path, sig_path, report_path, cells_path;
  auto* c_eval = app.add_subcommand("eval", "Accuracy and confusion matrix of a model on a signature CSV");
  c_eval->add_option("--model", model_path, "Model file")->required();
  c_eval->add_option("--signatures", sig_path, "Labelled signature CSV")->required();
  c_eval->add_option("--report", report_path, "Also write the JSON report here");

  std::vector<double> features;
  auto* c_predict = app.add_subcommand("predict", "Label and class probabilities for signatures");
  c_predict->add_option("--model", model_path, "Model file")->required();
  auto* o_feat = c_predict->add_option("--features", features, "Nine comma-separated values")->delimiter(',');
  c_predict->add_option("--signatures", sig_path, "Signature CSV")->excludes(o_feat);

  std::string video_id;
  FeatureFlags inspect_flags;
  fs::path inspect_manifest;
  auto* c_inspect = app.add_subcommand("inspect", "Dump the complex, diagrams and signature of one video");
  c_inspect->add_option("--manifest", inspect_manifest, "Manifest CSV")->required();
  c_inspect->add_option("--video", video_id, "Video id")->required();
  c_inspect->add_option("--cells", cells_path, "Also write the stacked complex cells here");
  add_feature_flags(c_inspect, inspect_flags);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (c_synth->parsed()) return cmd_synth(synth, out);
    if (c_extract->parsed()) return cmd_extract(extract, out, err);
    if (c_train->parsed()) return cmd_train(tr, out, err);
    if (c_eval->parsed()) return cmd_eval(model_path, sig_path, report_path, out);
    if (c_predict->parsed()) return cmd_predict(model_path, features, sig_path, out);
    if (c_inspect->parsed()) return cmd_inspect(inspect_manifest, video_id, inspect_flags, cells_path, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kUsage;
}

}  // namespace topoemo::cli
