#include "mlc/weights.hpp"

#include <zlib.h>

#include <cmath>
#include <fstream>
#include <iterator>

#include "byte_io.hpp"
#include "mlc/random.hpp"

namespace mlc {
namespace {

constexpr char kMagic[4] = {'M', 'L', 'C', 'W'};

std::uint32_t crc32_of(const unsigned char* data, std::size_t size) {
  uLong crc = crc32(0L, Z_NULL, 0);
  while (size > 0) {
    const uInt chunk = static_cast<uInt>(std::min<std::size_t>(size, 1u << 30));
    crc = crc32(crc, data, chunk);
    data += chunk;
    size -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

class Reader {
 public:
  explicit Reader(std::span<const unsigned char> bytes) : bytes_(bytes) {}

  const unsigned char* take(std::size_t count, const char* what) {
    if (bytes_.size() - pos_ < count) {
      throw WeightError(WeightErrorKind::kTruncatedPayload,
                        std::string("weight file truncated while reading ") + what);
    }
    const unsigned char* p = bytes_.data() + pos_;
    pos_ += count;
    return p;
  }
  template <class T>
  T get(const char* what) {
    return detail::get_le<T>(take(sizeof(T), what));
  }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const unsigned char> bytes_;
  std::size_t pos_ = 0;
};

[[noreturn]] void shape_error(const std::string& what) {
  throw WeightError(WeightErrorKind::kShapeInconsistency, what);
}

const Tensor& need(const WeightFile& file, const std::string& name) {
  const WeightRecord* rec = file.find(name);
  if (!rec) throw WeightError(WeightErrorKind::kMissingRecord, "weight record missing: " + name);
  return rec->tensor;
}

std::string dims_text(const std::vector<std::uint32_t>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

std::vector<float> expect(const WeightFile& file, const std::string& name,
                          std::vector<std::uint32_t> shape) {
  const Tensor& t = need(file, name);
  if (t.shape != shape) {
    shape_error(name + " has shape " + dims_text(t.shape) + ", expected " + dims_text(shape));
  }
  return t.values;
}

ConvLayer read_conv(const WeightFile& file, const std::string& name, int out, int in, int kernel,
                    int stride) {
  ConvLayer c{out, in, kernel, stride, {}, {}};
  const auto o = static_cast<std::uint32_t>(out);
  const auto i = static_cast<std::uint32_t>(in);
  const auto k = static_cast<std::uint32_t>(kernel);
  c.weight = expect(file, name + ".weight", {o, i, k, k});
  c.bias = expect(file, name + ".bias", {o});
  return c;
}

DenseLayer read_dense(const WeightFile& file, const std::string& name, int out, int in) {
  DenseLayer d{out, in, {}, {}};
  d.weight = expect(file, name + ".weight",
                    {static_cast<std::uint32_t>(out), static_cast<std::uint32_t>(in)});
  d.bias = expect(file, name + ".bias", {static_cast<std::uint32_t>(out)});
  return d;
}

void put_conv(WeightFile& file, const std::string& name, const ConvLayer& c) {
  const auto k = static_cast<std::uint32_t>(c.kernel);
  file.records.push_back({name + ".weight",
                          {{static_cast<std::uint32_t>(c.out), static_cast<std::uint32_t>(c.in), k, k},
                           c.weight}});
  file.records.push_back({name + ".bias", {{static_cast<std::uint32_t>(c.out)}, c.bias}});
}

void put_dense(WeightFile& file, const std::string& name, const DenseLayer& d) {
  file.records.push_back(
      {name + ".weight",
       {{static_cast<std::uint32_t>(d.out), static_cast<std::uint32_t>(d.in)}, d.weight}});
  file.records.push_back({name + ".bias", {{static_cast<std::uint32_t>(d.out)}, d.bias}});
}

std::string block_name(int b) { return "block" + std::to_string(b); }

Architecture read_arch(const WeightFile& file) {
  const Tensor& t = need(file, "arch");
  if (t.shape != std::vector<std::uint32_t>{6}) shape_error("arch record must hold 6 values");
  int v[6];
  for (int i = 0; i < 6; ++i) {
    const float f = t.values[i];
    if (!(f >= 1.0f && f <= 65536.0f) || std::floor(f) != f) {
      shape_error("arch record holds a non-integral or out-of-range value");
    }
    v[i] = static_cast<int>(f);
  }
  Architecture a{v[0], v[1], v[2], v[3], v[4], v[5]};
  if (a.image >> a.blocks == 0 || a.image % (1 << a.blocks) != 0) {
    shape_error("image size " + std::to_string(a.image) + " does not survive " +
                std::to_string(a.blocks) + " stride-2 blocks");
  }
  if (a.blocks > 12) shape_error("too many residual blocks");
  return a;
}

void fill_conv(ConvLayer& c, Rng& rng, bool random) {
  const std::size_t fan_in = static_cast<std::size_t>(c.in) * c.kernel * c.kernel;
  c.weight.assign(static_cast<std::size_t>(c.out) * fan_in, 0.0f);
  c.bias.assign(static_cast<std::size_t>(c.out), 0.0f);
  if (!random) return;
  const double sd = std::sqrt(2.0 / static_cast<double>(fan_in));
  for (float& w : c.weight) w = static_cast<float>(sd * normal01(rng));
}

void fill_dense(DenseLayer& d, Rng& rng, bool random) {
  d.weight.assign(static_cast<std::size_t>(d.out) * d.in, 0.0f);
  d.bias.assign(static_cast<std::size_t>(d.out), 0.0f);
  if (!random) return;
  const double sd = std::sqrt(2.0 / static_cast<double>(d.in));
  for (float& w : d.weight) w = static_cast<float>(sd * normal01(rng));
}

WeightBundle make_bundle(const Architecture& arch, std::uint64_t seed, bool random) {
  if (arch.stem < 1 || arch.blocks < 1 || arch.fc < 1 || arch.outputs < 1 || arch.channels < 1) {
    throw ContractError("architecture widths must be positive");
  }
  Rng rng(seed);
  WeightBundle b;
  b.arch = arch;
  b.stem = {arch.stem, arch.channels, 3, 1, {}, {}};
  fill_conv(b.stem, rng, random);
  int width = arch.stem;
  for (int k = 0; k < arch.blocks; ++k) {
    ResidualBlock blk;
    blk.conv1 = {2 * width, width, 3, 2, {}, {}};
    blk.conv2 = {2 * width, 2 * width, 3, 1, {}, {}};
    blk.shortcut = {2 * width, width, 1, 2, {}, {}};
    fill_conv(blk.conv1, rng, random);
    fill_conv(blk.conv2, rng, random);
    fill_conv(blk.shortcut, rng, random);
    b.blocks.push_back(std::move(blk));
    width *= 2;
  }
  b.fc = {arch.fc, width, {}, {}};
  b.out = {arch.outputs, arch.fc, {}, {}};
  fill_dense(b.fc, rng, random);
  fill_dense(b.out, rng, random);
  return b;
}

}  // namespace

const char* to_string(WeightErrorKind kind) noexcept {
  switch (kind) {
    case WeightErrorKind::kBadMagic: return "bad magic";
    case WeightErrorKind::kVersionMismatch: return "version mismatch";
    case WeightErrorKind::kShapeInconsistency: return "shape inconsistency";
    case WeightErrorKind::kTruncatedPayload: return "truncated payload";
    case WeightErrorKind::kChecksumMismatch: return "checksum mismatch";
    case WeightErrorKind::kMissingRecord: return "missing record";
    case WeightErrorKind::kIo: return "i/o error";
  }
  return "unknown";
}

std::size_t Tensor::numel() const {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

const WeightRecord* WeightFile::find(std::string_view name) const {
  for (const auto& r : records)
    if (r.name == name) return &r;
  return nullptr;
}

std::string serialize(const WeightFile& file) {
  std::string out(kMagic, 4);
  detail::put_le<std::uint32_t>(out, file.version);
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(file.records.size()));
  for (const auto& r : file.records) {
    if (r.name.size() > 0xFFFF) throw ContractError("record name too long: " + r.name);
    if (r.tensor.shape.size() > 0xFF) throw ContractError("tensor rank too large: " + r.name);
    if (r.tensor.numel() != r.tensor.values.size()) {
      throw ContractError("record " + r.name + " payload does not match its shape");
    }
    detail::put_le<std::uint16_t>(out, static_cast<std::uint16_t>(r.name.size()));
    out += r.name;
    detail::put_le<std::uint8_t>(out, static_cast<std::uint8_t>(r.tensor.shape.size()));
    for (auto d : r.tensor.shape) detail::put_le<std::uint32_t>(out, d);
    detail::put_floats(out, r.tensor.values);
  }
  detail::put_le<std::uint32_t>(
      out, crc32_of(reinterpret_cast<const unsigned char*>(out.data()), out.size()));
  return out;
}

WeightFile parse_weight_file(std::span<const unsigned char> bytes) {
  Reader rd(bytes);
  const unsigned char* magic = rd.take(4, "magic");
  if (!std::equal(magic, magic + 4, kMagic)) {
    throw WeightError(WeightErrorKind::kBadMagic, "not an MLCW weight file");
  }
  WeightFile file;
  file.version = rd.get<std::uint32_t>("version");
  if (file.version != kWeightFormatVersion) {
    throw WeightError(WeightErrorKind::kVersionMismatch,
                      "weight format version " + std::to_string(file.version) + ", expected " +
                          std::to_string(kWeightFormatVersion));
  }
  const auto count = rd.get<std::uint32_t>("record count");
  for (std::uint32_t r = 0; r < count; ++r) {
    WeightRecord rec;
    const auto len = rd.get<std::uint16_t>("name length");
    const unsigned char* name = rd.take(len, "record name");
    rec.name.assign(reinterpret_cast<const char*>(name), len);
    const auto rank = rd.get<std::uint8_t>("rank");
    std::size_t numel = 1;
    for (int d = 0; d < rank; ++d) {
      const auto dim = rd.get<std::uint32_t>("dims");
      rec.tensor.shape.push_back(dim);
      numel *= dim;
      if (numel > rd.remaining() / 4 + 1) {
        throw WeightError(WeightErrorKind::kTruncatedPayload,
                          "payload of " + rec.name + " runs past the end of the file");
      }
    }
    if (numel > rd.remaining() / 4) {
      throw WeightError(WeightErrorKind::kTruncatedPayload,
                        "payload of " + rec.name + " runs past the end of the file");
    }
    detail::get_floats(rd.take(numel * 4, "payload"), numel, rec.tensor.values);
    file.records.push_back(std::move(rec));
  }
  const std::size_t body = rd.pos();
  const auto stored = rd.get<std::uint32_t>("checksum");
  if (rd.remaining() != 0) {
    throw WeightError(WeightErrorKind::kShapeInconsistency,
                      std::to_string(rd.remaining()) + " stray bytes after the checksum");
  }
  if (crc32_of(bytes.data(), body) != stored) {
    throw WeightError(WeightErrorKind::kChecksumMismatch, "weight file checksum mismatch");
  }
  return file;
}

WeightFile read_weight_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WeightError(WeightErrorKind::kIo, "cannot open weights " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  return parse_weight_file(bytes);
}

void write_weight_file(const std::filesystem::path& path, const WeightFile& file) {
  const std::string bytes = serialize(file);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw WeightError(WeightErrorKind::kIo, "cannot write weights " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw WeightError(WeightErrorKind::kIo, "short write to " + path.string());
}

std::size_t WeightBundle::parameter_count() const {
  std::size_t n = stem.weight.size() + stem.bias.size();
  for (const auto& b : blocks) {
    for (const ConvLayer* c : {&b.conv1, &b.conv2, &b.shortcut}) n += c->weight.size() + c->bias.size();
  }
  return n + fc.weight.size() + fc.bias.size() + out.weight.size() + out.bias.size();
}

WeightBundle bundle_from_file(const WeightFile& file) {
  const Architecture arch = read_arch(file);
  WeightBundle b;
  b.arch = arch;
  b.stem = read_conv(file, "stem", arch.stem, arch.channels, 3, 1);
  int width = arch.stem;
  for (int k = 0; k < arch.blocks; ++k) {
    const std::string name = block_name(k + 1);
    ResidualBlock blk;
    blk.conv1 = read_conv(file, name + ".conv1", 2 * width, width, 3, 2);
    blk.conv2 = read_conv(file, name + ".conv2", 2 * width, 2 * width, 3, 1);
    blk.shortcut = read_conv(file, name + ".shortcut", 2 * width, width, 1, 2);
    b.blocks.push_back(std::move(blk));
    width *= 2;
  }
  b.fc = read_dense(file, "fc", arch.fc, width);
  b.out = read_dense(file, "out", arch.outputs, arch.fc);
  return b;
}

WeightFile bundle_to_file(const WeightBundle& b) {
  WeightFile file;
  const Architecture& a = b.arch;
  file.records.push_back(
      {"arch",
       {{6},
        {static_cast<float>(a.image), static_cast<float>(a.channels), static_cast<float>(a.stem),
         static_cast<float>(a.blocks), static_cast<float>(a.fc), static_cast<float>(a.outputs)}}});
  put_conv(file, "stem", b.stem);
  for (std::size_t k = 0; k < b.blocks.size(); ++k) {
    const std::string name = block_name(static_cast<int>(k) + 1);
    put_conv(file, name + ".conv1", b.blocks[k].conv1);
    put_conv(file, name + ".conv2", b.blocks[k].conv2);
    put_conv(file, name + ".shortcut", b.blocks[k].shortcut);
  }
  put_dense(file, "fc", b.fc);
  put_dense(file, "out", b.out);
  return file;
}

WeightBundle load_weights(std::span<const unsigned char> bytes) {
  return bundle_from_file(parse_weight_file(bytes));
}

WeightBundle load_weights_file(const std::filesystem::path& path) {
  return bundle_from_file(read_weight_file(path));
}

void save_weights_file(const std::filesystem::path& path, const WeightBundle& bundle) {
  write_weight_file(path, bundle_to_file(bundle));
}

WeightBundle random_bundle(const Architecture& arch, std::uint64_t seed) {
  return make_bundle(arch, seed, true);
}

WeightBundle zero_bundle(const Architecture& arch) { return make_bundle(arch, 0, false); }

}  // namespace mlc
