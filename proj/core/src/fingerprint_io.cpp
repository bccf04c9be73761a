#include <zlib.h>

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "prnu/error.hpp"
#include "prnu/fingerprint.hpp"

namespace prnu {
namespace {

constexpr std::array<char, 8> kMagic = {'P', 'R', 'N', 'U', 'F', 'P', '1', '\0'};
constexpr std::size_t kHeaderBytes = 8 + 2 + 4 * 5 + 1;


template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF));
  }
}

template <typename T>
T get_le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return static_cast<T>(v);
}

void read_exact(std::istream& in, std::uint8_t* dst, std::size_t n, const char* what) {
  in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    fail(Errc::TruncatedFile, std::string("file ends inside ") + what);
  }
}

}  // namespace

void save_fingerprint(const FingerprintEstimate& fp, std::ostream& out) {
  if (fp.khat.width != fp.width || fp.khat.height != fp.height ||
      fp.khat.size() != static_cast<std::size_t>(fp.width) * fp.height) {
    fail(Errc::DimensionMismatch, "fingerprint plane does not match its header");
  }
  for (float v : fp.khat.data) {
    if (!std::isfinite(v)) fail(Errc::BadParameter, "fingerprint contains non-finite values");
  }

  std::vector<std::uint8_t> bytes;
  bytes.reserve(kHeaderBytes + 4 * fp.khat.size() + 4);
  bytes.insert(bytes.end(), kMagic.begin(), kMagic.end());
  put_le<std::uint16_t>(bytes, kFingerprintVersion);
  put_le<std::uint32_t>(bytes, fp.width);
  put_le<std::uint32_t>(bytes, fp.height);
  put_le<std::uint32_t>(bytes, fp.frames_consumed);
  put_le<std::uint32_t>(bytes, fp.denoise_ops);
  put_le<std::uint32_t>(bytes, fp.depth);
  bytes.push_back(static_cast<std::uint8_t>(fp.mode));

  const std::size_t plane_offset = bytes.size();
  for (float v : fp.khat.data) put_le<std::uint32_t>(bytes, std::bit_cast<std::uint32_t>(v));
  const uLong crc = crc32(crc32(0L, Z_NULL, 0), bytes.data() + plane_offset,
                          static_cast<uInt>(bytes.size() - plane_offset));
  put_le<std::uint32_t>(bytes, static_cast<std::uint32_t>(crc));

  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(Errc::IoFailure, "fingerprint write failed");
}

FingerprintEstimate load_fingerprint(std::istream& in) {
  std::array<std::uint8_t, kHeaderBytes> header{};
  read_exact(in, header.data(), kHeaderBytes, "header");
  if (std::memcmp(header.data(), kMagic.data(), kMagic.size()) != 0) {
    fail(Errc::BadMagic, "not a fingerprint file");
  }
  const auto version = get_le<std::uint16_t>(header.data() + 8);
  if (version != kFingerprintVersion) {
    fail(Errc::VersionMismatch, "version " + std::to_string(version) + ", expected " +
                                    std::to_string(kFingerprintVersion));
  }
  FingerprintEstimate fp;
  fp.width = get_le<std::uint32_t>(header.data() + 10);
  fp.height = get_le<std::uint32_t>(header.data() + 14);
  fp.frames_consumed = get_le<std::uint32_t>(header.data() + 18);
  fp.denoise_ops = get_le<std::uint32_t>(header.data() + 22);
  fp.depth = get_le<std::uint32_t>(header.data() + 26);
  const std::uint8_t tag = header[30];
  if (tag > static_cast<std::uint8_t>(ExtractionMode::Stride)) {
    fail(Errc::BadMagic, "unknown mode tag " + std::to_string(tag));
  }
  fp.mode = static_cast<ExtractionMode>(tag);

  const std::size_t count = static_cast<std::size_t>(fp.width) * fp.height;
  std::vector<std::uint8_t> plane(4 * count);
  read_exact(in, plane.data(), plane.size(), "plane");
  std::array<std::uint8_t, 4> crc_bytes{};
  read_exact(in, crc_bytes.data(), 4, "checksum");
  const auto stored = get_le<std::uint32_t>(crc_bytes.data());
  const uLong crc = crc32(crc32(0L, Z_NULL, 0), plane.data(), static_cast<uInt>(plane.size()));
  if (static_cast<std::uint32_t>(crc) != stored) fail(Errc::ChecksumMismatch, "plane CRC32 differs");

  fp.khat = Plane(fp.width, fp.height);
  for (std::size_t i = 0; i < count; ++i) {
    fp.khat.data[i] = std::bit_cast<float>(get_le<std::uint32_t>(plane.data() + 4 * i));
  }
  return fp;
}

void save_fingerprint_file(const FingerprintEstimate& fp, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoFailure, "cannot create " + path.string());
  save_fingerprint(fp, out);
}

FingerprintEstimate load_fingerprint_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoFailure, "cannot open " + path.string());
  try {
    return load_fingerprint(in);
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

}  // namespace prnu
