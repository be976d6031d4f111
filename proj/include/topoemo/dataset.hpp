#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "topoemo/complex_build.hpp"

namespace topoemo {

/// Class labels in the order used by the classifier and confusion matrices.
enum class Emotion { calm = 0, happy, sad, angry, fearful, disgust, surprised };

inline constexpr std::size_t kNumEmotions = 7;
inline constexpr std::array<std::string_view, kNumEmotions> kEmotionNames{
    "calm", "happy", "sad", "angry", "fearful", "disgust", "surprised"};

inline int emotion_index(Emotion e) { return static_cast<int>(e); }
std::string_view emotion_name(Emotion e);
std::optional<Emotion> emotion_from_name(std::string_view name);

enum class Intensity { normal = 1, strong = 2 };

/// Fields of a RAVDESS file name `MM-VV-EE-II-SS-RR-AA`.
struct RavdessMetadata {
  int modality = 1;       // 01 audio-video, 02 video-only, 03 audio-only
  int vocal_channel = 1;  // 01 speech, 02 song
  int emotion_code = 2;   // 01 neutral .. 08 surprised
  Intensity intensity = Intensity::normal;
  int statement = 1;
  int repetition = 1;
  int actor = 1;
  std::optional<Emotion> emotion;  // empty for neutral
  bool included = true;            // passes the speech, audio-video, non-neutral filter
  std::string exclusion_reason;
};

/// Parses a RAVDESS name; directories and extensions are ignored. Throws
/// InputError for a malformed name or an out-of-range code.
RavdessMetadata parse_ravdess_filename(std::string_view name);
std::string format_ravdess_filename(const RavdessMetadata& meta);

struct VideoRecord {
  std::string video_id;
  int actor = 1;
  Emotion emotion = Emotion::calm;
  Intensity intensity = Intensity::normal;
  int statement = 1;
  int repetition = 1;
  std::vector<LandmarkFrame> frames;
  AudioSignal audio;
};

inline constexpr std::size_t kDefaultLandmarks = 62;

/// Landmark CSV: one row per frame, `x0,y0,x1,y1,...`. An optional header
/// row is accepted; when it names columns `x0`/`y0` or `x_0`/`y_0`, those
/// columns are used wherever they are (e.g. OpenFace exports).
std::vector<LandmarkFrame> load_landmark_track(const std::filesystem::path& path,
                                               std::size_t landmark_count = kDefaultLandmarks);
void write_landmark_track(const std::filesystem::path& path, std::span<const LandmarkFrame> frames);

/// Reads RIFF/WAVE with 16-bit PCM or 32-bit float samples, mono or
/// stereo. Channels are averaged; 16-bit samples are divided by 32768.
AudioSignal load_wav(const std::filesystem::path& path);
void write_wav_pcm16(const std::filesystem::path& path, const AudioSignal& signal);
void write_wav_float32(const std::filesystem::path& path, const AudioSignal& signal, int channels = 1);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded split stratified by label: each class gets its proportional share
/// of `train_n` (largest remainder), so per-class counts are within one of
/// exact proportionality. Index lists are ascending.
Split split_dataset(std::span<const int> labels, std::size_t train_n, std::uint64_t seed);

struct ManifestEntry {
  std::string video_id;
  std::filesystem::path landmarks;
  std::filesystem::path wav;
  std::string raw_filename;
};

/// CSV with header `video_id,landmarks,wav,raw_filename`; relative paths are
/// resolved against the manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, std::span<const ManifestEntry> entries);

VideoRecord load_video(const ManifestEntry& entry, std::size_t landmark_count = kDefaultLandmarks);

struct SynthOptions {
  std::size_t frames = 30;
  double sample_rate = 16000.0;
  std::size_t samples = 24000;
  double tracking_noise = 2.0;  // per-frame landmark noise (sd, pixels)
};

/// Parametric talking-face corpus: a 62-point face template whose mouth and
/// brows oscillate with class-specific amplitudes, plus a class-specific
/// tone. Classes are separable by construction; deterministic per seed.
std::vector<VideoRecord> synth_dataset(std::uint64_t seed, std::size_t per_class, const SynthOptions& opts = {});

/// Writes landmark CSVs, WAVs and a manifest under `dir`.
std::vector<ManifestEntry> write_corpus(const std::filesystem::path& dir, std::span<const VideoRecord> videos);

}  // namespace topoemo
