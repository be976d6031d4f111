#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "topoemo/dataset.hpp"
#include "topoemo/errors.hpp"

namespace topoemo {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}
void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v));
  out.push_back(static_cast<unsigned char>(v >> 8));
}
void put_tag(std::vector<unsigned char>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

void write_file(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<unsigned char> header(std::uint16_t format, int channels, double rate, int bits, std::size_t data_bytes) {
  std::vector<unsigned char> out;
  const auto block = static_cast<std::uint16_t>(channels * bits / 8);
  put_tag(out, "RIFF");
  put_u32(out, static_cast<std::uint32_t>(36 + data_bytes));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, format);
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, static_cast<std::uint32_t>(rate));
  put_u32(out, static_cast<std::uint32_t>(rate) * block);
  put_u16(out, block);
  put_u16(out, static_cast<std::uint16_t>(bits));
  put_tag(out, "data");
  put_u32(out, static_cast<std::uint32_t>(data_bytes));
  return out;
}

}  // namespace

AudioSignal load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open WAV file " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string name = path.string();

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw InputError(name + ": not a RIFF/WAVE file");
  }

  std::uint16_t format = 0, channels = 0, bits = 0, block = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > bytes.size()) throw InputError(name + ": truncated fmt chunk");
      format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      rate = read_u32(bytes.data() + body + 4);
      block = read_u16(bytes.data() + body + 12);
      bits = read_u16(bytes.data() + body + 14);
      if (format == kFormatExtensible) {
        if (size < 26) throw InputError(name + ": truncated extensible fmt chunk");
        format = read_u16(bytes.data() + body + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (body + size > bytes.size()) {
        throw InputError(name + ": truncated data chunk (" + std::to_string(bytes.size() - body) + " of " +
                         std::to_string(size) + " bytes)");
      }
      data = bytes.data() + body;
      data_size = size;
      break;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw InputError(name + ": missing fmt chunk");
  if (data == nullptr) throw InputError(name + ": missing data chunk");
  if (channels == 0) throw InputError(name + ": zero channels");

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32) {
    throw InputError(name + ": unsupported encoding (format " + std::to_string(format) + ", " +
                     std::to_string(bits) + " bits)");
  }
  const std::size_t sample_bytes = bits / 8;
  if (block != channels * sample_bytes) throw InputError(name + ": inconsistent block alignment");
  if (data_size % block != 0) throw InputError(name + ": truncated final frame");

  AudioSignal out;
  out.sample_rate = rate;
  const std::size_t frames = data_size / block;
  out.samples.resize(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    double sum = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const unsigned char* p = data + f * block + c * sample_bytes;
      if (pcm16) {
        sum += static_cast<double>(static_cast<std::int16_t>(read_u16(p))) / 32768.0;
      } else {
        const std::uint32_t raw = read_u32(p);
        float v;
        std::memcpy(&v, &raw, sizeof v);
        sum += static_cast<double>(v);
      }
    }
    out.samples[f] = sum / channels;
  }
  return out;
}

void write_wav_pcm16(const std::filesystem::path& path, const AudioSignal& signal) {
  auto bytes = header(kFormatPcm, 1, signal.sample_rate, 16, signal.samples.size() * 2);
  for (double s : signal.samples) {
    const long v = std::clamp(std::lround(s * 32768.0), -32768L, 32767L);
    put_u16(bytes, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  write_file(path, bytes);
}

void write_wav_float32(const std::filesystem::path& path, const AudioSignal& signal, int channels) {
  auto bytes = header(kFormatFloat, channels, signal.sample_rate, 32, signal.samples.size() * 4 * channels);
  for (double s : signal.samples) {
    const auto f = static_cast<float>(s);
    std::uint32_t raw;
    std::memcpy(&raw, &f, sizeof raw);
    for (int c = 0; c < channels; ++c) put_u32(bytes, raw);
  }
  write_file(path, bytes);
}

}  // namespace topoemo
