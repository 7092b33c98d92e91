#include "c2v/util/rng.hpp"

#include "c2v/util/error.hpp"

namespace c2v {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedRecord: return "MalformedRecord";
    case ErrorKind::InvalidLabel: return "InvalidLabel";
    case ErrorKind::LexError: return "LexError";
    case ErrorKind::ParseUnsupported: return "ParseUnsupported";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyBag: return "EmptyBag";
    case ErrorKind::AllMasked: return "AllMasked";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::VocabMismatch: return "VocabMismatch";
    case ErrorKind::EmptyEvaluationSet: return "EmptyEvaluationSet";
    case ErrorKind::Format: return "FormatError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection sampling over the largest multiple of bound.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open(double lo, double hi) {
  double u;
  do {
    u = uniform();
  } while (u == 0.0);
  return lo + (hi - lo) * u;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream + 0x5851f42d4c957f2dULL));
}

}  // namespace c2v
