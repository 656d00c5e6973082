#include "vocarch/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "vocarch/errors.hpp"

namespace vocarch::wav {

namespace {

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(v & 0xff);
  out.push_back((v >> 8) & 0xff);
  out.push_back((v >> 16) & 0xff);
  out.push_back((v >> 24) & 0xff);
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(v & 0xff);
  out.push_back((v >> 8) & 0xff);
}

}  // namespace

WavData read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorCode::MissingAudio, "cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw_error(ErrorCode::CorruptFile, "not a RIFF/WAVE file: " + path);

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  bool have_fmt = false;
  const uint8_t* data_ptr = nullptr;
  uint32_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    uint32_t chunk_len = read_u32(bytes.data() + pos + 4);
    if (pos + 8 + chunk_len > bytes.size())
      throw_error(ErrorCode::CorruptFile, "truncated chunk in " + path);
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (chunk_len < 16) throw_error(ErrorCode::CorruptFile, "short fmt chunk");
      const uint8_t* p = bytes.data() + pos + 8;
      format = read_u16(p);
      channels = read_u16(p + 2);
      rate = read_u32(p + 4);
      bits = read_u16(p + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_ptr = bytes.data() + pos + 8;
      data_len = chunk_len;
    }
    pos += 8 + chunk_len + (chunk_len & 1);
  }
  if (!have_fmt || data_ptr == nullptr)
    throw_error(ErrorCode::CorruptFile, "missing fmt/data chunk: " + path);
  if (channels == 0 || rate == 0)
    throw_error(ErrorCode::CorruptFile, "invalid fmt chunk: " + path);

  // WAVE_FORMAT_EXTENSIBLE (0xfffe) payloads are not parsed for subformat;
  // bits-per-sample disambiguates the cases this pipeline accepts.
  const bool is_float = (format == 3) || (format == 0xfffe && bits == 32);
  const bool is_pcm = (format == 1) || (format == 0xfffe && bits != 32);
  if (!is_float && !is_pcm)
    throw_error(ErrorCode::UnsupportedFormat, "unsupported WAV codec in " + path);

  const int bytes_per_sample = bits / 8;
  if (is_pcm && bits != 16 && bits != 24)
    throw_error(ErrorCode::UnsupportedFormat,
                "PCM depth must be 16 or 24 bits: " + path);
  if (is_float && bits != 32)
    throw_error(ErrorCode::UnsupportedFormat, "float WAV must be 32-bit: " + path);

  const std::size_t frame_bytes = static_cast<std::size_t>(bytes_per_sample) * channels;
  const std::size_t n_frames = data_len / frame_bytes;

  WavData out;
  out.sample_rate = static_cast<double>(rate);
  out.samples.resize(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const uint8_t* p = data_ptr + i * frame_bytes;  // first channel
    double v = 0.0;
    if (is_float) {
      float f;
      std::memcpy(&f, p, 4);
      v = f;
    } else if (bits == 16) {
      int16_t s = static_cast<int16_t>(p[0] | (p[1] << 8));
      v = s / 32768.0;
    } else {  // 24-bit
      int32_t s = (p[0] << 8) | (p[1] << 16) | (p[2] << 24);
      v = (s >> 8) / 8388608.0;
    }
    out.samples[i] = v;
  }
  return out;
}

void write(const std::string& path, const std::vector<double>& samples,
           double sample_rate) {
  std::vector<uint8_t> out;
  out.reserve(44 + samples.size() * 2);
  const uint32_t data_len = static_cast<uint32_t>(samples.size() * 2);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_len);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  const uint32_t rate = static_cast<uint32_t>(std::lround(sample_rate));
  put_u32(out, rate);
  put_u32(out, rate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_len);
  for (double v : samples) {
    double c = std::clamp(v, -1.0, 1.0);
    int16_t s = static_cast<int16_t>(std::lround(c * 32767.0));
    put_u16(out, static_cast<uint16_t>(s));
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw_error(ErrorCode::MissingAudio, "cannot write " + path);
  f.write(reinterpret_cast<const char*>(out.data()),
          static_cast<std::streamsize>(out.size()));
}

}  // namespace vocarch::wav
