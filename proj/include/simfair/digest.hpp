#pragma once

#include <cstdint>
#include <string>

namespace simfair {

// Incremental SHA-256, used for scenario digests.
class Sha256 {
 public:
  Sha256();

  void update(const void* data, std::size_t size);
  void update(const std::string& text) { update(text.data(), text.size()); }
  void update(double value) { update(&value, sizeof(value)); }
  void update(std::uint64_t value) { update(&value, sizeof(value)); }

  // Finalizes and returns the lowercase hex digest. The object must not be
  // updated afterwards.
  std::string hex_digest();

  static std::string hash_hex(const std::string& text);

 private:
  void process_block(const std::uint8_t* block);

  std::uint32_t state_[8];
  std::uint8_t buffer_[64];
  std::size_t buffer_len_ = 0;
  std::uint64_t total_bytes_ = 0;
};

}  // namespace simfair
