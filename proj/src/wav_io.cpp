#include "specgrad/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include "specgrad/errors.hpp"

namespace specgrad {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

Waveform read_wav(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw IoError("cannot open for reading: " + path);

  std::vector<std::uint8_t> bytes;
  std::uint8_t chunk[4096];
  std::size_t got;
  while ((got = std::fread(chunk, 1, sizeof chunk, f.get())) > 0) {
    bytes.insert(bytes.end(), chunk, chunk + got);
  }

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw FormatError("not a RIFF/WAVE file: " + path);
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  const std::uint8_t* data = nullptr;
  std::uint32_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* header = bytes.data() + pos;
    const std::uint32_t size = read_u32(header + 4);
    const std::uint8_t* payload = header + 8;
    if (pos + 8 + size > bytes.size()) {
      throw FormatError("truncated chunk in " + path);
    }
    if (std::memcmp(header, "fmt ", 4) == 0) {
      if (size < 16) throw FormatError("short fmt chunk in " + path);
      format = read_u16(payload);
      channels = read_u16(payload + 2);
      sample_rate = read_u32(payload + 4);
      bits = read_u16(payload + 14);
      have_fmt = true;
    } else if (std::memcmp(header, "data", 4) == 0) {
      data = payload;
      data_size = size;
    }
    pos += 8 + size + (size % 2);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) {
    throw FormatError("missing fmt or data chunk in " + path);
  }
  if (format != 1) {
    throw UnsupportedFormatError("only PCM supported, format tag " +
                                 std::to_string(format) + " in " + path);
  }
  if (channels != 1) {
    throw UnsupportedFormatError("only mono supported, " +
                                 std::to_string(channels) + " channels in " + path);
  }
  if (bits != 16) {
    throw UnsupportedFormatError("only 16-bit supported, " + std::to_string(bits) +
                                 " bits in " + path);
  }
  if (sample_rate == 0) throw FormatError("zero sample rate in " + path);
  if (data_size < 2) throw FormatError("empty data chunk in " + path);

  Waveform out;
  out.sample_rate = static_cast<int>(sample_rate);
  const std::size_t count = data_size / 2;
  out.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::int16_t pcm =
        static_cast<std::int16_t>(data[2 * i] | (data[2 * i + 1] << 8));
    out.samples[i] = static_cast<double>(pcm) / 32768.0;
  }
  return out;
}

std::size_t write_wav(const Waveform& w, const std::string& path) {
  if (w.samples.empty()) throw DegenerateInputError("refusing to write empty waveform");
  if (w.sample_rate <= 0) throw ConfigError("sample rate must be positive");
  if (!all_finite(w.samples)) throw EvaluationError("non-finite samples");

  const std::uint32_t data_size = static_cast<std::uint32_t>(w.samples.size() * 2);
  std::vector<std::uint8_t> bytes;
  bytes.reserve(44 + data_size);
  put_tag(bytes, "RIFF");
  put_u32(bytes, 36 + data_size);
  put_tag(bytes, "WAVE");
  put_tag(bytes, "fmt ");
  put_u32(bytes, 16);
  put_u16(bytes, 1);  // PCM
  put_u16(bytes, 1);  // mono
  put_u32(bytes, static_cast<std::uint32_t>(w.sample_rate));
  put_u32(bytes, static_cast<std::uint32_t>(w.sample_rate) * 2);
  put_u16(bytes, 2);   // block align
  put_u16(bytes, 16);  // bits
  put_tag(bytes, "data");
  put_u32(bytes, data_size);

  std::size_t clipped = 0;
  for (double x : w.samples) {
    if (x > 1.0 || x < -1.0) ++clipped;
    long q = std::lround(x * 32768.0);
    q = std::clamp(q, -32768L, 32767L);
    put_u16(bytes, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }

  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw IoError("cannot open for writing: " + path);
  if (std::fwrite(bytes.data(), 1, bytes.size(), f.get()) != bytes.size()) {
    throw IoError("short write: " + path);
  }
  return clipped;
}

}  // namespace specgrad
