#include "topoemo/signature.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "topoemo/errors.hpp"

namespace topoemo {

std::array<double, kSignatureSize> TopologicalSignature::features() const {
  std::array<double, kSignatureSize> out{};
  for (std::size_t i = 0; i < video.size(); ++i) out[i] = video[i];
  out[8] = audio;
  return out;
}

std::vector<std::size_t> select_frames(std::size_t total, std::size_t k) {
  if (total == 0) throw std::invalid_argument("select_frames: video has no frames");
  if (k == 0) throw std::invalid_argument("select_frames: k must be positive");
  if (k == 1) return {0};
  std::vector<std::size_t> out(k);
  for (std::size_t j = 0; j < k; ++j) out[j] = j * (total - 1) / (k - 1);
  return out;
}

AudioSignal subsample_signal(const AudioSignal& signal, std::size_t m) {
  if (signal.samples.empty()) throw std::invalid_argument("subsample_signal: empty signal");
  const std::size_t len = signal.samples.size();
  if (len <= m) return signal;
  AudioSignal out;
  out.sample_rate = signal.sample_rate * static_cast<double>(m) / static_cast<double>(len);
  out.samples.resize(m);
  if (m == 1) {
    out.samples[0] = signal.samples[0];
    return out;
  }
  for (std::size_t j = 0; j < m; ++j) out.samples[j] = signal.samples[j * (len - 1) / (m - 1)];
  return out;
}

double filtration_entropy(const Filtration& f, const SignatureOptions& opts) {
  auto diagram = compute_persistence(f, opts.coordinates);
  if (opts.entropy == EntropyMode::h0_only) diagram = restrict_to_dimension(diagram, 0);
  return persistent_entropy(cap_infinite(std::move(diagram), cap_value(f, opts.coordinates)));
}

std::array<double, 8> extract_video_features(std::span<const LandmarkFrame> frames, const SignatureOptions& opts) {
  if (frames.empty()) throw std::invalid_argument("extract_video_features: no frames");
  auto picked = select_frames(frames.size(), opts.frames);
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
  std::vector<LandmarkFrame> chosen;
  for (std::size_t idx : picked) chosen.push_back(frames[idx]);

  const CellComplex complex = build_stacked_complex(chosen);
  const auto filters = plane_filters(complex);

  std::array<double, 8> out{};
  std::array<std::exception_ptr, 8> errors{};
#pragma omp parallel for schedule(dynamic, 1) if (opts.execution == Execution::parallel)
  for (int k = 0; k < 8; ++k) {
    try {
      out[k] = filtration_entropy(lower_star_filtration(complex, filters[k]), opts);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

double extract_audio_feature(const AudioSignal& signal, const SignatureOptions& opts) {
  if (signal.samples.empty()) throw DegenerateInputError("extract_audio_feature: empty audio signal");
  const auto path = build_path_complex(subsample_signal(signal, opts.audio_points));
  const FilterFunction amplitude{FilterLabel::audio, path.vertex_values};
  try {
    return filtration_entropy(lower_star_filtration(path.complex, amplitude), opts);
  } catch (const DegenerateInputError& e) {
    throw DegenerateInputError(std::string("audio feature: ") + e.what());
  }
}

TopologicalSignature extract_signature(const VideoRecord& video, const SignatureOptions& opts) {
  TopologicalSignature sig;
  sig.video = extract_video_features(video.frames, opts);
  sig.audio = extract_audio_feature(video.audio, opts);
  sig.label = video.emotion;
  return sig;
}

std::string format_signature_row(const SignatureRow& row) {
  std::ostringstream out;
  out.precision(17);
  out << row.video_id << ',';
  if (row.signature.label) out << emotion_name(*row.signature.label);
  for (double v : row.signature.features()) out << ',' << v;
  return out.str();
}

void write_signature_csv(std::ostream& out, std::span<const SignatureRow> rows) {
  for (const auto& r : rows) out << format_signature_row(r) << '\n';
}

std::vector<SignatureRow> read_signature_csv(std::istream& in) {
  std::vector<SignatureRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line_no == 1 && line.rfind("video_id,", 0) == 0) continue;

    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 2 + kSignatureSize) {
      throw InputError("signature CSV line " + std::to_string(line_no) + ": expected " +
                       std::to_string(2 + kSignatureSize) + " fields, got " + std::to_string(cells.size()));
    }
    SignatureRow row;
    row.video_id = cells[0];
    if (!cells[1].empty()) {
      row.signature.label = emotion_from_name(cells[1]);
      if (!row.signature.label) {
        throw InputError("signature CSV line " + std::to_string(line_no) + ": unknown label '" + cells[1] + "'");
      }
    }
    for (std::size_t i = 0; i < kSignatureSize; ++i) {
      double v = 0.0;
      try {
        std::size_t used = 0;
        v = std::stod(cells[2 + i], &used);
        if (used != cells[2 + i].size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw InputError("signature CSV line " + std::to_string(line_no) + ": bad number '" + cells[2 + i] + "'");
      }
      if (!std::isfinite(v)) throw InputError("signature CSV line " + std::to_string(line_no) + ": non-finite value");
      if (i < 8) {
        row.signature.video[i] = v;
      } else {
        row.signature.audio = v;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace topoemo
