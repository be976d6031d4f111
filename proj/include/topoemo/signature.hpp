#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topoemo/complex_build.hpp"
#include "topoemo/dataset.hpp"
#include "topoemo/persistence.hpp"

namespace topoemo {

enum class EntropyMode {
  pooled,   // every homology dimension of a filtration in one diagram
  h0_only,  // connected components only
};

enum class Execution { serial, parallel };

struct SignatureOptions {
  std::size_t frames = 9;
  std::size_t audio_points = 10000;
  EntropyMode entropy = EntropyMode::pooled;
  DiagramCoordinates coordinates = DiagramCoordinates::values;
  Execution execution = Execution::parallel;
};

inline constexpr std::size_t kSignatureSize = 9;

struct TopologicalSignature {
  /// Entropies of the eight plane filtrations, in FilterLabel order.
  std::array<double, 8> video{};
  double audio = 0.0;
  std::optional<Emotion> label;

  std::array<double, kSignatureSize> features() const;
};

/// floor(j * (total - 1) / (k - 1)) for j = 0..k-1; all zeros when k = 1.
std::vector<std::size_t> select_frames(std::size_t total, std::size_t k = 9);

/// Samples at floor(j * (len - 1) / (m - 1)); the signal itself when len <= m.
AudioSignal subsample_signal(const AudioSignal& signal, std::size_t m = 10000);

/// Lower-star diagram of `f`, capped at its maximum value, reduced per the
/// entropy mode, then its persistent entropy.
double filtration_entropy(const Filtration& f, const SignatureOptions& opts = {});

/// Selects frames (repeated indices collapse when the video is shorter than
/// the frame budget), stacks them, and returns the eight plane-filtration
/// entropies.
std::array<double, 8> extract_video_features(std::span<const LandmarkFrame> frames,
                                             const SignatureOptions& opts = {});

/// Subsampled path complex with the amplitude as filter. A constant signal
/// yields 0 (one capped interval).
double extract_audio_feature(const AudioSignal& signal, const SignatureOptions& opts = {});

TopologicalSignature extract_signature(const VideoRecord& video, const SignatureOptions& opts = {});

struct SignatureRow {
  std::string video_id;
  TopologicalSignature signature;
};

/// `video_id,label,f1,...,f9` per line, 17 significant digits; the label is
/// an emotion name or empty.
void write_signature_csv(std::ostream& out, std::span<const SignatureRow> rows);
std::string format_signature_row(const SignatureRow& row);
/// Blank lines and a leading `video_id,...` header are skipped. Throws
/// InputError on malformed rows.
std::vector<SignatureRow> read_signature_csv(std::istream& in);

}  // namespace topoemo
