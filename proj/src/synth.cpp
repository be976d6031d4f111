#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "topoemo/dataset.hpp"
#include "topoemo/errors.hpp"

namespace topoemo {
namespace {

constexpr double kCenterX = 320.0;
constexpr double kCenterY = 240.0;
constexpr std::size_t kMaxPerClass = 192;  // distinct RAVDESS-style names per emotion

enum class Part { jaw, brow, nose, eye, mouth_upper, mouth_lower };

struct TemplatePoint {
  Point2 p;
  Part part;
};

// 62 points: jaw 15, brows 10, nose 9, eyes 12, mouth 16. Image
// coordinates, y grows downwards.
std::vector<TemplatePoint> face_template() {
  using std::numbers::pi;
  std::vector<TemplatePoint> pts;
  for (int i = 0; i < 15; ++i) {
    const double a = pi * (0.1 + 0.8 * i / 14.0);
    pts.push_back({{kCenterX - 110.0 * std::cos(a), kCenterY + 130.0 * std::sin(a)}, Part::jaw});
  }
  for (double side : {-1.0, 1.0}) {
    for (int i = 0; i < 5; ++i) {
      const double u = (i - 2) / 2.0;
      pts.push_back({{kCenterX + side * (45.0 + 22.0 * u), kCenterY - 65.0 + 6.0 * u * u}, Part::brow});
    }
  }
  for (int i = 0; i < 4; ++i) pts.push_back({{kCenterX, kCenterY - 40.0 + 15.0 * i}, Part::nose});
  for (int i = 0; i < 5; ++i) pts.push_back({{kCenterX - 20.0 + 10.0 * i, kCenterY + 25.0 - 3.0 * (i % 2)}, Part::nose});
  for (double side : {-1.0, 1.0}) {
    for (int i = 0; i < 6; ++i) {
      const double a = 2.0 * pi * i / 6.0;
      pts.push_back({{kCenterX + side * 42.0 + 18.0 * std::cos(a), kCenterY - 40.0 + 8.0 * std::sin(a)}, Part::eye});
    }
  }
  for (int i = 0; i < 10; ++i) {
    const double a = 2.0 * pi * i / 10.0 + 0.1;
    const double y = std::sin(a);
    pts.push_back({{kCenterX + 40.0 * std::cos(a), kCenterY + 70.0 + 15.0 * y},
                   y > 0 ? Part::mouth_lower : Part::mouth_upper});
  }
  for (int i = 0; i < 6; ++i) {
    const double a = 2.0 * pi * i / 6.0 + 0.3;
    const double y = std::sin(a);
    pts.push_back({{kCenterX + 25.0 * std::cos(a), kCenterY + 70.0 + 6.0 * y},
                   y > 0 ? Part::mouth_lower : Part::mouth_upper});
  }

  // Fixed irregularity so no frame is exactly cocircular or collinear.
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> wobble(0.0, 1.5);
  for (auto& t : pts) {
    t.p.x += wobble(rng);
    t.p.y += wobble(rng);
  }
  return pts;
}

VideoRecord synth_record(std::uint64_t seed, int cls, std::size_t r, const SynthOptions& opts,
                         const std::vector<TemplatePoint>& face) {
  using std::numbers::pi;
  std::seed_seq seq{seed, static_cast<std::uint64_t>(cls), static_cast<std::uint64_t>(r)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> scale(0.97, 1.03);
  std::uniform_real_distribution<double> shift(-20.0, 20.0);
  std::normal_distribution<double> jitter(0.0, opts.tracking_noise > 0.0 ? opts.tracking_noise : 1.0);
  const double noise_on = opts.tracking_noise > 0.0 ? 1.0 : 0.0;

  RavdessMetadata meta;
  meta.emotion_code = cls + 2;
  meta.actor = static_cast<int>(r / 8 + 1);
  meta.intensity = static_cast<Intensity>(r % 2 + 1);
  meta.statement = static_cast<int>((r / 2) % 2 + 1);
  meta.repetition = static_cast<int>((r / 4) % 2 + 1);

  VideoRecord v;
  v.video_id = format_ravdess_filename(meta);
  v.actor = meta.actor;
  v.emotion = static_cast<Emotion>(cls);
  v.intensity = meta.intensity;
  v.statement = meta.statement;
  v.repetition = meta.repetition;

  const double mouth = (4.0 + 5.0 * cls) * scale(rng);
  const double brow = (2.0 + (6 - cls) * 1.5) * scale(rng);
  const double cycles = 1.0 + cls % 3;
  const double tx = shift(rng);
  const double ty = shift(rng);
  const std::size_t frames = opts.frames;
  for (std::size_t t = 0; t < frames; ++t) {
    const double phase = frames > 1 ? 2.0 * pi * cycles * t / static_cast<double>(frames - 1) : 0.0;
    const double open = std::abs(std::sin(phase));
    LandmarkFrame f;
    f.frame_index = t;
    for (const auto& tp : face) {
      Point2 p = tp.p;
      switch (tp.part) {
        case Part::mouth_lower: p.y += mouth * open; break;
        case Part::mouth_upper: p.y -= mouth * open / 3.0; break;
        case Part::jaw:
          if (p.y > kCenterY + 60.0) p.y += 0.5 * mouth * open;
          break;
        case Part::brow: p.y -= brow * open; break;
        default: break;
      }
      const double jx = jitter(rng), jy = jitter(rng);
      f.points.push_back({p.x + tx + noise_on * jx, p.y + ty + noise_on * jy});
    }
    v.frames.push_back(std::move(f));
  }

  const double amplitude = 0.5 * scale(rng);
  const double periods = 3.0 * std::pow(2.0, cls);
  const std::size_t n = opts.samples;
  const std::size_t begin = n / 10;
  const std::size_t end = n - n / 10;
  v.audio.sample_rate = opts.sample_rate;
  v.audio.samples.assign(n, 0.0);
  for (std::size_t i = begin; i < end; ++i) {
    v.audio.samples[i] = amplitude * std::sin(2.0 * pi * periods * static_cast<double>(i - begin) /
                                              static_cast<double>(end - begin));
  }
  return v;
}

}  // namespace

std::vector<VideoRecord> synth_dataset(std::uint64_t seed, std::size_t per_class, const SynthOptions& opts) {
  if (per_class < 1) throw std::invalid_argument("synth_dataset: per_class must be at least 1");
  if (per_class > kMaxPerClass) {
    throw std::invalid_argument("synth_dataset: per_class is limited to " + std::to_string(kMaxPerClass));
  }
  if (opts.frames < 1 || opts.samples < 10) throw std::invalid_argument("synth_dataset: too few frames or samples");
  if (!(opts.tracking_noise >= 0.0)) throw std::invalid_argument("synth_dataset: tracking noise must be non-negative");
  const auto face = face_template();
  std::vector<VideoRecord> out;
  out.reserve(per_class * kNumEmotions);
  for (int c = 0; c < static_cast<int>(kNumEmotions); ++c)
    for (std::size_t r = 0; r < per_class; ++r) out.push_back(synth_record(seed, c, r, opts, face));
  return out;
}

std::vector<ManifestEntry> write_corpus(const std::filesystem::path& dir, std::span<const VideoRecord> videos) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "landmarks", ec);
  std::filesystem::create_directories(dir / "audio", ec);
  if (ec) throw InputError("cannot create corpus directory " + dir.string() + ": " + ec.message());

  std::vector<ManifestEntry> entries;
  for (const auto& v : videos) {
    RavdessMetadata meta;
    meta.emotion_code = emotion_index(v.emotion) + 2;
    meta.intensity = v.intensity;
    meta.statement = v.statement;
    meta.repetition = v.repetition;
    meta.actor = v.actor;
    ManifestEntry e{v.video_id, std::filesystem::path("landmarks") / (v.video_id + ".csv"),
                    std::filesystem::path("audio") / (v.video_id + ".wav"), format_ravdess_filename(meta) + ".mp4"};
    write_landmark_track(dir / e.landmarks, v.frames);
    write_wav_pcm16(dir / e.wav, v.audio);
    entries.push_back(std::move(e));
  }
  write_manifest(dir / "manifest.csv", entries);
  return entries;
}

}  // namespace topoemo
