#include "c2v/model/checkpoint.hpp"

#include <array>
#include <cstring>
#include <fstream>

#include "c2v/util/error.hpp"

namespace c2v::model {

namespace {

constexpr std::array<char, 8> kMagic = {'C', '2', 'V', 'C', 'K', 'P', 'T', '\0'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  template <typename T>
  void pod(T value) {
    out_.write(reinterpret_cast<const char*>(&value), sizeof(T));
  }
  void text(const std::string& s) {
    pod(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  template <typename M>
  void tensor(const M& m) {
    pod(static_cast<std::uint64_t>(m.rows()));
    pod(static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) pod(m(r, c));
    }
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  template <typename T>
  T pod() {
    T value;
    in_.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in_) throw Error(ErrorKind::Format, "checkpoint is truncated");
    return value;
  }
  std::string text() {
    const auto n = pod<std::uint32_t>();
    if (n > (1u << 26)) throw Error(ErrorKind::Format, "checkpoint string too long");
    std::string s(n, '\0');
    in_.read(s.data(), n);
    if (!in_) throw Error(ErrorKind::Format, "checkpoint is truncated");
    return s;
  }
  template <typename M>
  void tensor(M& m) {
    const auto rows = pod<std::uint64_t>();
    const auto cols = pod<std::uint64_t>();
    if (rows > (1ull << 32) || cols > (1ull << 20)) {
      throw Error(ErrorKind::Format, "checkpoint tensor shape is implausible");
    }
    if constexpr (M::ColsAtCompileTime == 1) {
      if (cols != 1) throw Error(ErrorKind::Format, "checkpoint vector has wrong shape");
      m.resize(static_cast<Eigen::Index>(rows));
    } else {
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = pod<double>();
    }
  }

 private:
  std::istream& in_;
};

}  // namespace

bool operator==(const Checkpoint& a, const Checkpoint& b) {
  return a.metadata == b.metadata && a.vocab_digest == b.vocab_digest &&
         a.epoch == b.epoch && a.params == b.params &&
         a.adam.step == b.adam.step && a.adam.first_moment == b.adam.first_moment &&
         a.adam.second_moment == b.adam.second_moment &&
         a.adam.config.learning_rate == b.adam.config.learning_rate &&
         a.adam.config.beta1 == b.adam.config.beta1 &&
         a.adam.config.beta2 == b.adam.config.beta2 &&
         a.adam.config.epsilon == b.adam.config.epsilon;
}

void save_checkpoint(const std::filesystem::path& file, const Checkpoint& ckpt) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write checkpoint " + file.string());
  Writer w(out);
  out.write(kMagic.data(), kMagic.size());
  w.pod(kCheckpointVersion);
  w.text(ckpt.metadata.dump());
  w.text(ckpt.vocab_digest);
  w.pod(ckpt.epoch);
  w.pod(ckpt.adam.step);
  w.pod(ckpt.adam.config.learning_rate);
  w.pod(ckpt.adam.config.beta1);
  w.pod(ckpt.adam.config.beta2);
  w.pod(ckpt.adam.config.epsilon);
  ckpt.params.zip([&](const auto& t) { w.tensor(t); });
  ckpt.adam.first_moment.zip([&](const auto& t) { w.tensor(t); });
  ckpt.adam.second_moment.zip([&](const auto& t) { w.tensor(t); });
  if (!out) throw Error(ErrorKind::Io, "write failed for " + file.string());
}

void check_vocab(const Checkpoint& ckpt, const std::string& vocab_digest) {
  if (ckpt.vocab_digest != vocab_digest) {
    throw Error(ErrorKind::VocabMismatch, "checkpoint vocabulary " + ckpt.vocab_digest +
                                              " does not match supplied vocabulary " +
                                              vocab_digest);
  }
}

Checkpoint load_checkpoint(const std::filesystem::path& file,
                           const std::optional<std::string>& expected_vocab_digest) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read checkpoint " + file.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) {
    throw Error(ErrorKind::Format, file.string() + " is not a checkpoint");
  }
  Reader r(in);
  const auto version = r.pod<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw Error(ErrorKind::Format, "unsupported checkpoint version " + std::to_string(version));
  }
  Checkpoint ckpt;
  try {
    ckpt.metadata = nlohmann::json::parse(r.text());
  } catch (const nlohmann::json::parse_error&) {
    throw Error(ErrorKind::Format, "checkpoint metadata is not JSON");
  }
  ckpt.vocab_digest = r.text();
  if (expected_vocab_digest) check_vocab(ckpt, *expected_vocab_digest);
  ckpt.epoch = r.pod<std::int64_t>();
  ckpt.adam.step = r.pod<std::int64_t>();
  ckpt.adam.config.learning_rate = r.pod<double>();
  ckpt.adam.config.beta1 = r.pod<double>();
  ckpt.adam.config.beta2 = r.pod<double>();
  ckpt.adam.config.epsilon = r.pod<double>();
  ckpt.params.zip([&](auto& t) { r.tensor(t); });
  ckpt.adam.first_moment.zip([&](auto& t) { r.tensor(t); });
  ckpt.adam.second_moment.zip([&](auto& t) { r.tensor(t); });
  if (!ckpt.params.same_shape(ckpt.adam.first_moment) ||
      !ckpt.params.same_shape(ckpt.adam.second_moment) ||
      ckpt.params.combine.rows() != ckpt.params.dim() ||
      ckpt.params.combine.cols() != 3 * ckpt.params.dim()) {
    throw Error(ErrorKind::Format, "checkpoint tensors have inconsistent shapes");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorKind::Format, "trailing bytes after checkpoint tensors");
  }
  return ckpt;
}

}  // namespace c2v::model
