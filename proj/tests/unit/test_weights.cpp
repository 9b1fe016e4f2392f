#include <doctest.h>

#include <zlib.h>

#include <cstring>
#include <filesystem>

#include "mlc/weights.hpp"

using namespace mlc;

namespace {

Architecture small_arch() {
  Architecture a;
  a.stem = 2;
  return a;
}

WeightErrorKind kind_of(const std::string& bytes) {
  try {
    parse_weight_file(std::span(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size()));
  } catch (const WeightError& e) {
    return e.kind();
  }
  FAIL("expected a weight error");
  return WeightErrorKind::kIo;
}

WeightErrorKind bundle_kind_of(const WeightFile& f) {
  try {
    bundle_from_file(f);
  } catch (const WeightError& e) {
    return e.kind();
  }
  FAIL("expected a weight error");
  return WeightErrorKind::kIo;
}

void fix_crc(std::string& bytes) {
  const auto body = bytes.size() - 4;
  const uLong crc = crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(body));
  for (int b = 0; b < 4; ++b) bytes[body + b] = static_cast<char>((crc >> (8 * b)) & 0xFF);
}

}  // namespace

TEST_CASE("byte layout of a one-record file") {
  WeightFile f;
  f.records.push_back({"ab", {{2}, {1.0f, -2.0f}}});
  const std::string bytes = serialize(f);
  // magic 4 + version 4 + count 4 + namelen 2 + name 2 + rank 1 + dim 4 + payload 8 + crc 4
  REQUIRE(bytes.size() == 33);
  CHECK(bytes.substr(0, 4) == "MLCW");
  CHECK(static_cast<unsigned char>(bytes[4]) == 1);
  CHECK(static_cast<unsigned char>(bytes[8]) == 1);
  CHECK(static_cast<unsigned char>(bytes[12]) == 2);
  CHECK(bytes.substr(14, 2) == "ab");
  CHECK(static_cast<unsigned char>(bytes[16]) == 1);
  CHECK(static_cast<unsigned char>(bytes[17]) == 2);
  float v;
  std::memcpy(&v, bytes.data() + 25, 4);
  CHECK(v == -2.0f);
  const uLong crc = crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(bytes.data()), 29);
  CHECK(static_cast<unsigned char>(bytes[29]) == (crc & 0xFF));
  CHECK(static_cast<unsigned char>(bytes[32]) == ((crc >> 24) & 0xFF));
}

TEST_CASE("random bundle round trips bit for bit") {
  const auto b = random_bundle(small_arch(), 5);
  const auto file = bundle_to_file(b);
  const std::string bytes = serialize(file);
  const auto back = parse_weight_file(std::span(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size()));
  CHECK(back.records == file.records);
  CHECK(serialize(back) == bytes);
  const auto rb = bundle_from_file(back);
  CHECK(rb.arch == b.arch);
  CHECK(rb.blocks[3].conv2.weight == b.blocks[3].conv2.weight);
  CHECK(rb.out.out == 2);
  CHECK(rb.fc.out == 9);
  CHECK(rb.fc.in == 32);

  const auto path = std::filesystem::temp_directory_path() / "mlc_roundtrip.mlcw";
  save_weights_file(path, b);
  CHECK(serialize(bundle_to_file(load_weights_file(path))) == bytes);
  std::filesystem::remove(path);
}

TEST_CASE("default architecture reaches 1024 pooled features") {
  const Architecture a;
  CHECK(a.features() == 1024);
  CHECK(a.blocks == 4);
  CHECK(a.fc == 9);
  CHECK(a.outputs == 2);
}

TEST_CASE("distinct errors for distinct corruptions") {
  const std::string good = serialize(bundle_to_file(random_bundle(small_arch(), 1)));

  std::string magic = good;
  magic[0] = 'X';
  CHECK(kind_of(magic) == WeightErrorKind::kBadMagic);

  std::string version = good;
  version[4] = 2;
  CHECK(kind_of(version) == WeightErrorKind::kVersionMismatch);

  CHECK(kind_of(good.substr(0, good.size() / 2)) == WeightErrorKind::kTruncatedPayload);
  CHECK(kind_of(good.substr(0, 10)) == WeightErrorKind::kTruncatedPayload);

  // First record is "arch" (name length 4, rank 1, dim 6); corrupt the dim.
  std::string length = good;
  REQUIRE(length.substr(14, 4) == "arch");
  length[19] = static_cast<char>(0x7F);
  length[20] = static_cast<char>(0x7F);
  length[21] = static_cast<char>(0x7F);
  CHECK(kind_of(length) == WeightErrorKind::kTruncatedPayload);

  std::string flipped = good;
  flipped[good.size() / 2] ^= 0x01;
  CHECK(kind_of(flipped) == WeightErrorKind::kChecksumMismatch);

  std::string trailing = good + "xx";
  CHECK(kind_of(trailing) == WeightErrorKind::kShapeInconsistency);
}

TEST_CASE("shape and presence checks") {
  auto file = bundle_to_file(random_bundle(small_arch(), 2));
  auto missing = file;
  missing.records.erase(missing.records.begin() + 3);
  CHECK(bundle_kind_of(missing) == WeightErrorKind::kMissingRecord);

  auto wrong = file;
  for (auto& r : wrong.records)
    if (r.name == "block2.conv1.weight") {
      r.tensor.shape[0] += 1;
      r.tensor.values.resize(r.tensor.numel());
    }
  CHECK(bundle_kind_of(wrong) == WeightErrorKind::kShapeInconsistency);

  auto arch = file;
  arch.records[0].tensor.values[0] = 90.0f;  // not divisible by 2^4
  CHECK(bundle_kind_of(arch) == WeightErrorKind::kShapeInconsistency);

  auto meta = file;
  meta.records.push_back({"meta.optimizer", {{1}, {0.001f}}});
  CHECK_NOTHROW(bundle_from_file(meta));

  // Shape errors surface through load_weights even with a valid checksum.
  std::string bytes = serialize(wrong);
  fix_crc(bytes);
  CHECK_THROWS_AS(load_weights(std::span(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size())),
                  WeightError);
}

TEST_CASE("zero bundle and parameter count") {
  const auto z = zero_bundle(small_arch());
  for (float w : z.blocks[0].conv1.weight) CHECK(w == 0.0f);
  // stem 2*3*9+2, blocks c->2c: conv1 2c*c*9+2c, conv2 4c^2*9+2c, shortcut 2c*c+2c
  std::size_t expect = 2 * 3 * 9 + 2;
  for (std::size_t c = 2; c <= 16; c *= 2) expect += 2 * c * c * 9 + 2 * c + 4 * c * c * 9 + 2 * c + 2 * c * c + 2 * c;
  expect += 9 * 32 + 9 + 2 * 9 + 2;
  CHECK(z.parameter_count() == expect);
  CHECK_THROWS_AS(read_weight_file("/nonexistent/w.mlcw"), WeightError);
}
