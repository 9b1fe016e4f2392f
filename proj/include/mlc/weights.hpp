#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlc/error.hpp"

namespace mlc {

// "MLCW" weight files: magic, u32 version, u32 record count, then records
// (u16 name length, name, u8 rank, u32 dims[rank], float32 payload) and a
// trailing CRC32 of everything before it. Little-endian throughout.

inline constexpr std::uint32_t kWeightFormatVersion = 1;

enum class WeightErrorKind {
  kBadMagic,
  kVersionMismatch,
  kShapeInconsistency,
  kTruncatedPayload,
  kChecksumMismatch,
  kMissingRecord,
  kIo,
};

const char* to_string(WeightErrorKind kind) noexcept;

class WeightError : public Error {
 public:
  WeightError(WeightErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  WeightErrorKind kind() const noexcept { return kind_; }

 private:
  WeightErrorKind kind_;
};

struct Tensor {
  std::vector<std::uint32_t> shape;
  std::vector<float> values;

  std::size_t numel() const;
  friend bool operator==(const Tensor&, const Tensor&) = default;
};

struct WeightRecord {
  std::string name;
  Tensor tensor;
  friend bool operator==(const WeightRecord&, const WeightRecord&) = default;
};

/// Raw record container; knows the byte format but not the network.
struct WeightFile {
  std::uint32_t version = kWeightFormatVersion;
  std::vector<WeightRecord> records;

  const WeightRecord* find(std::string_view name) const;
};

std::string serialize(const WeightFile& file);
/// Structure first, then checksum; throws WeightError.
WeightFile parse_weight_file(std::span<const unsigned char> bytes);
WeightFile read_weight_file(const std::filesystem::path& path);
void write_weight_file(const std::filesystem::path& path, const WeightFile& file);

/// Layer widths of the residual classifier.
struct Architecture {
  int image = 96;
  int channels = 3;
  int stem = 64;
  int blocks = 4;
  int fc = 9;
  int outputs = 2;

  /// Width after the last block, which is also the pooled feature count.
  int features() const { return stem << blocks; }
  friend bool operator==(const Architecture&, const Architecture&) = default;
};

struct ConvLayer {
  int out = 0;
  int in = 0;
  int kernel = 0;
  int stride = 1;
  std::vector<float> weight;  // [out][in][kernel][kernel]
  std::vector<float> bias;    // [out]
};

struct DenseLayer {
  int out = 0;
  int in = 0;
  std::vector<float> weight;  // [out][in]
  std::vector<float> bias;
};

struct ResidualBlock {
  ConvLayer conv1;     // 3x3, stride 2, doubles the width
  ConvLayer conv2;     // 3x3, stride 1
  ConvLayer shortcut;  // 1x1, stride 2 projection
};

/// Validated network parameters. Immutable after construction.
struct WeightBundle {
  Architecture arch;
  ConvLayer stem;
  std::vector<ResidualBlock> blocks;
  DenseLayer fc;
  DenseLayer out;

  std::size_t parameter_count() const;
};

/// Checks every record against the architecture record; throws WeightError
/// (kMissingRecord or kShapeInconsistency). Records named "meta.*" are kept
/// out of the bundle and ignored.
WeightBundle bundle_from_file(const WeightFile& file);
WeightFile bundle_to_file(const WeightBundle& bundle);

WeightBundle load_weights(std::span<const unsigned char> bytes);
WeightBundle load_weights_file(const std::filesystem::path& path);
void save_weights_file(const std::filesystem::path& path, const WeightBundle& bundle);

/// He-normal convolution and dense weights, zero biases.
WeightBundle random_bundle(const Architecture& arch, std::uint64_t seed);
WeightBundle zero_bundle(const Architecture& arch);

}  // namespace mlc
