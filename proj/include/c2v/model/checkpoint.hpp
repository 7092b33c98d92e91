#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "c2v/model/adam.hpp"
#include "c2v/model/params.hpp"

namespace c2v::model {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  nlohmann::json metadata;   // training config snapshot and validation metrics
  std::string vocab_digest;  // Vocabulary::digest() of the training vocabulary
  std::int64_t epoch = 0;
  ModelParams params;
  AdamState adam;

  friend bool operator==(const Checkpoint& a, const Checkpoint& b);
};

// Binary little-endian layout: magic "C2VCKPT\0", u32 version, metadata JSON
// and vocabulary digest as u32-length-prefixed strings, i64 epoch, i64 Adam
// step, four f64 Adam constants, then the five tensors (u64 rows, u64 cols,
// row-major f64 data) for the parameters, first moments and second
// moments in that order. Identical checkpoints serialize to identical bytes.
void save_checkpoint(const std::filesystem::path& file, const Checkpoint& ckpt);

// Throws Error{VocabMismatch} naming both digests when expected_vocab_digest
// is given and differs from the stored one; Error{Format} on corrupt input.
Checkpoint load_checkpoint(const std::filesystem::path& file,
                           const std::optional<std::string>& expected_vocab_digest = {});

void check_vocab(const Checkpoint& ckpt, const std::string& vocab_digest);

}  // namespace c2v::model
