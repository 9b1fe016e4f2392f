#pragma once

// Little-endian primitive I/O shared by the blob and weight formats.

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace mlc::detail {

template <class T>
void put_le(std::string& out, T value) {
  using U = std::conditional_t<sizeof(T) == 1, std::uint8_t,
            std::conditional_t<sizeof(T) == 2, std::uint16_t,
            std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>>;
  U bits = std::bit_cast<U>(value);
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    out.push_back(static_cast<char>(bits & 0xFF));
    bits = static_cast<U>(bits >> 8);
  }
}

template <class T>
T get_le(const unsigned char* p) {
  using U = std::conditional_t<sizeof(T) == 1, std::uint8_t,
            std::conditional_t<sizeof(T) == 2, std::uint16_t,
            std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>>;
  U bits = 0;
  for (std::size_t b = sizeof(T); b-- > 0;) bits = static_cast<U>((bits << 8) | p[b]);
  return std::bit_cast<T>(bits);
}

inline void put_floats(std::string& out, const std::vector<float>& values) {
  if constexpr (std::endian::native == std::endian::little) {
    const auto old = out.size();
    out.resize(old + values.size() * 4);
    std::memcpy(out.data() + old, values.data(), values.size() * 4);
  } else {
    for (float v : values) put_le(out, v);
  }
}

inline void get_floats(const unsigned char* p, std::size_t count, std::vector<float>& out) {
  out.resize(count);
  if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(out.data(), p, count * 4);
  } else {
    for (std::size_t i = 0; i < count; ++i) out[i] = get_le<float>(p + 4 * i);
  }
}

}  // namespace mlc::detail
