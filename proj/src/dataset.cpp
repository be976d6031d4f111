#include "topoemo/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "topoemo/errors.hpp"

namespace topoemo {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n\"");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n\"");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return v;
}

int parse_code(std::string_view field, int lo, int hi, const char* what, std::string_view name) {
  if (field.size() != 2 || !std::isdigit(static_cast<unsigned char>(field[0])) ||
      !std::isdigit(static_cast<unsigned char>(field[1]))) {
    throw InputError("malformed RAVDESS name '" + std::string(name) + "': field '" + std::string(field) +
                     "' is not a 2-digit code");
  }
  const int v = (field[0] - '0') * 10 + (field[1] - '0');
  if (v < lo || v > hi) {
    throw InputError("RAVDESS name '" + std::string(name) + "': unknown " + what + " code " + std::string(field));
  }
  return v;
}

std::string two_digits(int v) {
  std::string s = std::to_string(v);
  return s.size() < 2 ? "0" + s : s;
}

}  // namespace

std::string_view emotion_name(Emotion e) { return kEmotionNames.at(static_cast<std::size_t>(e)); }

std::optional<Emotion> emotion_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kEmotionNames.size(); ++i)
    if (kEmotionNames[i] == name) return static_cast<Emotion>(i);
  return std::nullopt;
}

RavdessMetadata parse_ravdess_filename(std::string_view name) {
  const auto slash = name.find_last_of("/\\");
  if (slash != std::string_view::npos) name = name.substr(slash + 1);
  const auto dot = name.find('.');
  if (dot != std::string_view::npos) name = name.substr(0, dot);

  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto dash = name.find('-', start);
    fields.push_back(name.substr(start, dash - start));
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  if (fields.size() != 7) {
    throw InputError("malformed RAVDESS name '" + std::string(name) + "': expected 7 fields, got " +
                     std::to_string(fields.size()));
  }

  RavdessMetadata m;
  m.modality = parse_code(fields[0], 1, 3, "modality", name);
  m.vocal_channel = parse_code(fields[1], 1, 2, "vocal channel", name);
  m.emotion_code = parse_code(fields[2], 1, 8, "emotion", name);
  m.intensity = static_cast<Intensity>(parse_code(fields[3], 1, 2, "intensity", name));
  m.statement = parse_code(fields[4], 1, 2, "statement", name);
  m.repetition = parse_code(fields[5], 1, 2, "repetition", name);
  m.actor = parse_code(fields[6], 1, 24, "actor", name);
  if (m.emotion_code >= 2) m.emotion = static_cast<Emotion>(m.emotion_code - 2);

  if (m.vocal_channel != 1) {
    m.included = false;
    m.exclusion_reason = "song";
  } else if (m.modality != 1) {
    m.included = false;
    m.exclusion_reason = "not audio-video";
  } else if (!m.emotion) {
    m.included = false;
    m.exclusion_reason = "neutral";
  }
  return m;
}

std::string format_ravdess_filename(const RavdessMetadata& m) {
  return two_digits(m.modality) + "-" + two_digits(m.vocal_channel) + "-" + two_digits(m.emotion_code) + "-" +
         two_digits(static_cast<int>(m.intensity)) + "-" + two_digits(m.statement) + "-" +
         two_digits(m.repetition) + "-" + two_digits(m.actor);
}

std::vector<LandmarkFrame> load_landmark_track(const std::filesystem::path& path, std::size_t landmark_count) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open landmark file " + path.string());

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw InputError(path.string() + ": no landmark rows");

  // Column index of x_i / y_i for every landmark.
  std::vector<std::pair<std::size_t, std::size_t>> columns;
  std::size_t first_row = 0;
  if (!parse_double(rows[0][0])) {
    first_row = 1;
    std::map<std::string, std::size_t> by_name;
    for (std::size_t c = 0; c < rows[0].size(); ++c) by_name[rows[0][c]] = c;
    for (const char* sep : {"", "_"}) {
      for (std::size_t i = 0;; ++i) {
        const auto x = by_name.find("x" + std::string(sep) + std::to_string(i));
        const auto y = by_name.find("y" + std::string(sep) + std::to_string(i));
        if (x == by_name.end() || y == by_name.end()) break;
        columns.emplace_back(x->second, y->second);
      }
      if (!columns.empty()) break;
    }
  }
  if (first_row >= rows.size()) throw InputError(path.string() + ": header but no frames");
  const std::size_t width = rows[first_row].size();
  if (columns.empty()) {
    if (width % 2 != 0) throw InputError(path.string() + ": odd number of coordinate columns (" +
                                         std::to_string(width) + ")");
    for (std::size_t i = 0; i < width / 2; ++i) columns.emplace_back(2 * i, 2 * i + 1);
  }
  if (columns.size() != landmark_count) {
    throw InputError(path.string() + ": file has " + std::to_string(columns.size()) + " landmarks, expected " +
                     std::to_string(landmark_count));
  }

  std::vector<LandmarkFrame> frames;
  for (std::size_t r = first_row; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != width) throw InputError(path.string() + ": ragged row " + std::to_string(r + 1));
    LandmarkFrame frame;
    frame.frame_index = frames.size();
    frame.points.reserve(columns.size());
    for (const auto& [cx, cy] : columns) {
      const auto x = parse_double(row[cx]);
      const auto y = parse_double(row[cy]);
      if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y)) {
        throw InputError(path.string() + ": non-numeric coordinate on row " + std::to_string(r + 1));
      }
      frame.points.push_back({*x, *y});
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

void write_landmark_track(const std::filesystem::path& path, std::span<const LandmarkFrame> frames) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write landmark file " + path.string());
  out.precision(17);
  const std::size_t n = frames.empty() ? 0 : frames.front().points.size();
  for (std::size_t i = 0; i < n; ++i) out << (i ? "," : "") << 'x' << i << ",y" << i;
  out << '\n';
  for (const auto& f : frames) {
    for (std::size_t i = 0; i < f.points.size(); ++i) out << (i ? "," : "") << f.points[i].x << ',' << f.points[i].y;
    out << '\n';
  }
}

Split split_dataset(std::span<const int> labels, std::size_t train_n, std::uint64_t seed) {
  const std::size_t total = labels.size();
  if (train_n > total) {
    throw std::invalid_argument("split_dataset: train size " + std::to_string(train_n) + " exceeds corpus size " +
                                std::to_string(total));
  }
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < total; ++i) by_class[labels[i]].push_back(i);

  std::mt19937_64 rng(seed);
  struct Share {
    int label;
    std::size_t quota;
    double remainder;
  };
  std::vector<Share> shares;
  std::size_t assigned = 0;
  for (auto& [label, idx] : by_class) {
    std::shuffle(idx.begin(), idx.end(), rng);
    const double exact = static_cast<double>(train_n) * static_cast<double>(idx.size()) / static_cast<double>(total);
    const auto quota = static_cast<std::size_t>(std::floor(exact));
    shares.push_back({label, quota, exact - static_cast<double>(quota)});
    assigned += quota;
  }
  std::vector<std::size_t> order(shares.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return shares[a].remainder > shares[b].remainder; });
  for (std::size_t k = 0; assigned < train_n; k = (k + 1) % order.size()) {
    auto& s = shares[order[k]];
    if (s.quota < by_class[s.label].size()) {
      ++s.quota;
      ++assigned;
    }
  }

  Split split;
  for (const auto& s : shares) {
    const auto& idx = by_class[s.label];
    split.train.insert(split.train.end(), idx.begin(), idx.begin() + static_cast<long>(s.quota));
    split.test.insert(split.test.end(), idx.begin() + static_cast<long>(s.quota), idx.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest " + path.string());
  const auto base = path.parent_path();
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (line_no == 1 && !cells.empty() && cells[0] == "video_id") continue;
    if (cells.size() != 4) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected 4 columns, got " +
                       std::to_string(cells.size()));
    }
    ManifestEntry e{cells[0], cells[1], cells[2], cells[3]};
    if (e.landmarks.is_relative()) e.landmarks = base / e.landmarks;
    if (e.wav.is_relative()) e.wav = base / e.wav;
    entries.push_back(std::move(e));
  }
  return entries;
}

void write_manifest(const std::filesystem::path& path, std::span<const ManifestEntry> entries) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write manifest " + path.string());
  out << "video_id,landmarks,wav,raw_filename\n";
  for (const auto& e : entries)
    out << e.video_id << ',' << e.landmarks.generic_string() << ',' << e.wav.generic_string() << ','
        << e.raw_filename << '\n';
}

VideoRecord load_video(const ManifestEntry& entry, std::size_t landmark_count) {
  const auto meta = parse_ravdess_filename(entry.raw_filename);
  if (!meta.emotion) throw InputError(entry.video_id + ": neutral videos are not classified");
  VideoRecord v;
  v.video_id = entry.video_id;
  v.actor = meta.actor;
  v.emotion = *meta.emotion;
  v.intensity = meta.intensity;
  v.statement = meta.statement;
  v.repetition = meta.repetition;
  v.frames = load_landmark_track(entry.landmarks, landmark_count);
  v.audio = load_wav(entry.wav);
  return v;
}

}  // namespace topoemo
