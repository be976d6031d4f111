#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>

#include "topoemo/dataset.hpp"
#include "topoemo/errors.hpp"

using namespace topoemo;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("topoemo_dataset_" + tag + "_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void put_u16(std::vector<unsigned char>& b, std::uint16_t v) {
  b.push_back(v & 0xff);
  b.push_back(v >> 8);
}
void put_u32(std::vector<unsigned char>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff);
}

// Hand-built 16-bit PCM file.
void write_raw_wav(const fs::path& p, int channels, std::uint32_t rate, const std::vector<std::int16_t>& samples) {
  std::vector<unsigned char> b;
  const std::uint32_t data = static_cast<std::uint32_t>(samples.size() * 2);
  b.insert(b.end(), {'R', 'I', 'F', 'F'});
  put_u32(b, 36 + data);
  b.insert(b.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32(b, 16);
  put_u16(b, 1);
  put_u16(b, static_cast<std::uint16_t>(channels));
  put_u32(b, rate);
  put_u32(b, rate * channels * 2);
  put_u16(b, static_cast<std::uint16_t>(channels * 2));
  put_u16(b, 16);
  b.insert(b.end(), {'d', 'a', 't', 'a'});
  put_u32(b, data);
  for (auto s : samples) put_u16(b, static_cast<std::uint16_t>(s));
  std::ofstream(p, std::ios::binary).write(reinterpret_cast<const char*>(b.data()), static_cast<long>(b.size()));
}

}  // namespace

TEST_CASE("RAVDESS names") {
  const auto m = parse_ravdess_filename("01-01-06-01-02-01-12");
  CHECK(m.emotion == Emotion::fearful);
  CHECK(m.intensity == Intensity::normal);
  CHECK(m.statement == 2);
  CHECK(m.repetition == 1);
  CHECK(m.actor == 12);
  CHECK(m.included);

  const auto neutral = parse_ravdess_filename("some/dir/01-01-01-01-01-01-03.mp4");
  CHECK_FALSE(neutral.emotion.has_value());
  CHECK_FALSE(neutral.included);
  CHECK(neutral.actor == 3);

  CHECK(parse_ravdess_filename("01-02-03-01-01-01-01").exclusion_reason == "song");
  CHECK(parse_ravdess_filename("02-01-03-01-01-01-01").exclusion_reason == "not audio-video");
  CHECK(parse_ravdess_filename("01-01-08-02-01-01-24").emotion == Emotion::surprised);

  CHECK_THROWS_AS(parse_ravdess_filename("01-01-06-01-02-01"), InputError);
  CHECK_THROWS_AS(parse_ravdess_filename("01-01-09-01-02-01-12"), InputError);
  CHECK_THROWS_AS(parse_ravdess_filename("01-01-06-01-02-01-25"), InputError);
  CHECK_THROWS_AS(parse_ravdess_filename("01-01-x6-01-02-01-12"), InputError);
  CHECK_THROWS_AS(parse_ravdess_filename(""), InputError);
}

TEST_CASE("RAVDESS formatting inverts parsing") {
  for (int e = 1; e <= 8; ++e)
    for (int i = 1; i <= 2; ++i)
      for (int a : {1, 9, 10, 24}) {
        RavdessMetadata m;
        m.emotion_code = e;
        m.intensity = static_cast<Intensity>(i);
        m.statement = 2;
        m.repetition = 1;
        m.actor = a;
        const auto name = format_ravdess_filename(m);
        CHECK(name.size() == 20);
        CHECK(format_ravdess_filename(parse_ravdess_filename(name)) == name);
      }
}

TEST_CASE("the speech audio-video corpus filters to 1344 videos") {
  std::size_t total = 0, kept = 0;
  std::array<std::size_t, kNumEmotions> per_class{};
  for (int actor = 1; actor <= 24; ++actor)
    for (int e = 1; e <= 8; ++e)
      for (int i = 1; i <= (e == 1 ? 1 : 2); ++i)
        for (int s = 1; s <= 2; ++s)
          for (int r = 1; r <= 2; ++r) {
            RavdessMetadata m;
            m.emotion_code = e;
            m.intensity = static_cast<Intensity>(i);
            m.statement = s;
            m.repetition = r;
            m.actor = actor;
            ++total;
            const auto p = parse_ravdess_filename(format_ravdess_filename(m));
            if (p.included) {
              ++kept;
              ++per_class[emotion_index(*p.emotion)];
            }
          }
  CHECK(total == 1440);
  CHECK(kept == 1344);
  for (auto n : per_class) CHECK(n == 192);
}

TEST_CASE("emotion names") {
  CHECK(emotion_name(Emotion::calm) == "calm");
  CHECK(emotion_from_name("disgust") == Emotion::disgust);
  CHECK_FALSE(emotion_from_name("neutral").has_value());
}

TEST_CASE("landmark CSV round trip and errors") {
  TempDir dir("landmarks");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 640);
  std::vector<LandmarkFrame> frames(5);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    frames[f].frame_index = f;
    for (int k = 0; k < 62; ++k) frames[f].points.push_back({u(rng), u(rng)});
  }
  const auto path = dir.path / "a.csv";
  write_landmark_track(path, frames);
  {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    if (line.rfind("x0", 0) == 0) std::getline(in, line);
    CHECK(std::count(line.begin(), line.end(), ',') == 123);
  }
  const auto back = load_landmark_track(path);
  REQUIRE(back.size() == 5);
  for (std::size_t f = 0; f < 5; ++f) {
    CHECK(back[f].frame_index == f);
    for (int k = 0; k < 62; ++k) {
      CHECK(back[f].points[k].x == frames[f].points[k].x);
      CHECK(back[f].points[k].y == frames[f].points[k].y);
    }
  }
  CHECK_THROWS_AS(load_landmark_track(path, 60), InputError);

  const auto plain = dir.path / "plain.csv";
  std::ofstream(plain) << "1,2,3,4,5,6\n7,8,9,10,11,12\n";
  const auto small = load_landmark_track(plain, 3);
  REQUIRE(small.size() == 2);
  CHECK(small[1].points[2].x == 11.0);
  CHECK(small[1].points[2].y == 12.0);

  const auto openface = dir.path / "openface.csv";
  std::ofstream(openface) << "frame,confidence,x_0,x_1,y_0,y_1\n1,0.9,10,20,30,40\n";
  const auto of = load_landmark_track(openface, 2);
  REQUIRE(of.size() == 1);
  CHECK(of[0].points[1].x == 20.0);
  CHECK(of[0].points[1].y == 40.0);

  const auto ragged = dir.path / "ragged.csv";
  std::ofstream(ragged) << "1,2,3,4,5,6\n7,8,9,10\n";
  CHECK_THROWS_AS(load_landmark_track(ragged, 3), InputError);
  const auto text = dir.path / "text.csv";
  std::ofstream(text) << "1,2,3,4,5,six\n";
  CHECK_THROWS_AS(load_landmark_track(text, 3), InputError);
  CHECK_THROWS_AS(load_landmark_track(dir.path / "missing.csv"), InputError);
}

TEST_CASE("WAV decoding") {
  TempDir dir("wav");
  const auto zeros = dir.path / "zeros.wav";
  write_raw_wav(zeros, 1, 48000, std::vector<std::int16_t>(48000, 0));
  const auto z = load_wav(zeros);
  CHECK(z.samples.size() == 48000);
  CHECK(z.sample_rate == 48000);
  CHECK(std::all_of(z.samples.begin(), z.samples.end(), [](double v) { return v == 0.0; }));

  const auto stereo = dir.path / "stereo.wav";
  write_raw_wav(stereo, 2, 16000, {16384, -16384, 16384, -16384});
  const auto s = load_wav(stereo);
  CHECK(s.samples == std::vector<double>{0.0, 0.0});

  const auto extremes = dir.path / "extremes.wav";
  write_raw_wav(extremes, 1, 8000, {-32768, 32767, 16384});
  const auto e = load_wav(extremes);
  CHECK(e.samples[0] == -1.0);
  CHECK(e.samples[1] == 32767.0 / 32768.0);
  CHECK(e.samples[2] == 0.5);

  AudioSignal sig{{0.25, -0.5, 0.75}, 22050};
  const auto f32 = dir.path / "f32.wav";
  write_wav_float32(f32, sig);
  CHECK(load_wav(f32).samples == sig.samples);
  const auto pcm = dir.path / "pcm.wav";
  write_wav_pcm16(pcm, sig);
  CHECK(load_wav(pcm).samples == sig.samples);
  CHECK(load_wav(pcm).sample_rate == 22050);

  const auto junk = dir.path / "junk.wav";
  std::ofstream(junk) << "not a wav file at all";
  CHECK_THROWS_AS(load_wav(junk), InputError);
  CHECK_THROWS_AS(load_wav(dir.path / "missing.wav"), InputError);

  std::ifstream in(pcm, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto cut = dir.path / "cut.wav";
  std::ofstream(cut, std::ios::binary) << bytes.substr(0, bytes.size() - 3);
  CHECK_THROWS_AS(load_wav(cut), InputError);
}

TEST_CASE("stratified split") {
  std::vector<int> labels;
  for (int c = 0; c < 7; ++c)
    for (int k = 0; k < 192; ++k) labels.push_back(c);
  std::shuffle(labels.begin(), labels.end(), std::mt19937_64(2));
  const auto s = split_dataset(labels, 944, 7);
  CHECK(s.train.size() == 944);
  CHECK(s.test.size() == 400);
  CHECK(std::is_sorted(s.train.begin(), s.train.end()));
  std::vector<std::size_t> all = s.train;
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);
  std::array<int, 7> counts{};
  for (auto i : s.train) ++counts[labels[i]];
  for (int c : counts) CHECK(std::abs(c - 944.0 / 7.0) <= 1.0);

  const auto again = split_dataset(labels, 944, 7);
  CHECK(again.train == s.train);
  CHECK_FALSE(split_dataset(labels, 944, 8).train == s.train);

  const std::vector<int> seven{0, 1, 2, 3, 4, 5, 6};
  const auto tiny = split_dataset(seven, 7, 1);
  CHECK(tiny.train.size() == 7);
  CHECK(tiny.test.empty());
  CHECK(split_dataset(seven, 0, 1).test.size() == 7);
  CHECK_THROWS_AS(split_dataset(seven, 8, 1), std::invalid_argument);
}

TEST_CASE("manifest round trip") {
  TempDir dir("manifest");
  const std::vector<ManifestEntry> entries{{"a", "lm/a.csv", "audio/a.wav", "01-01-03-01-01-01-01.mp4"},
                                           {"b", "/abs/b.csv", "/abs/b.wav", "01-01-04-02-01-02-05.mp4"}};
  write_manifest(dir.path / "m.csv", entries);
  const auto back = read_manifest(dir.path / "m.csv");
  REQUIRE(back.size() == 2);
  CHECK(back[0].landmarks == dir.path / "lm/a.csv");
  CHECK(back[1].wav == fs::path("/abs/b.wav"));
  CHECK(back[1].raw_filename == entries[1].raw_filename);

  std::ofstream(dir.path / "bad.csv") << "video_id,landmarks,wav,raw_filename\na,b,c\n";
  CHECK_THROWS_AS(read_manifest(dir.path / "bad.csv"), InputError);
}

TEST_CASE("synthetic corpus") {
  const auto a = synth_dataset(3, 2);
  CHECK(a.size() == 14);
  std::array<int, 7> counts{};
  for (const auto& v : a) {
    ++counts[emotion_index(v.emotion)];
    CHECK(v.frames.size() == 30);
    CHECK(v.audio.samples.size() == 24000);
    for (const auto& f : v.frames) CHECK(f.points.size() == kDefaultLandmarks);
    const auto meta = parse_ravdess_filename(v.video_id);
    CHECK(meta.emotion == v.emotion);
    CHECK(meta.actor == v.actor);
  }
  for (int c : counts) CHECK(c == 2);

  const auto b = synth_dataset(3, 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].video_id == b[i].video_id);
    CHECK(a[i].audio.samples == b[i].audio.samples);
    CHECK(a[i].frames[7].points[40].x == b[i].frames[7].points[40].x);
  }
  CHECK_FALSE(synth_dataset(4, 2)[0].frames[0].points[0].x == a[0].frames[0].points[0].x);
  CHECK_THROWS_AS(synth_dataset(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(synth_dataset(3, 193), std::invalid_argument);
}

TEST_CASE("synthetic corpus round trips through files") {
  TempDir dir("corpus");
  SynthOptions opts;
  opts.frames = 4;
  opts.samples = 2000;
  const auto videos = synth_dataset(5, 1, opts);
  write_corpus(dir.path, videos);
  const auto entries = read_manifest(dir.path / "manifest.csv");
  REQUIRE(entries.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    const auto v = load_video(entries[i]);
    CHECK(v.video_id == videos[i].video_id);
    CHECK(v.emotion == videos[i].emotion);
    REQUIRE(v.frames.size() == 4);
    CHECK(v.frames[3].points[10].x == videos[i].frames[3].points[10].x);
    REQUIRE(v.audio.samples.size() == 2000);
    for (std::size_t k = 0; k < 2000; k += 97) CHECK(std::abs(v.audio.samples[k] - videos[i].audio.samples[k]) <= 1.0 / 32768.0);
  }
}
