#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "c2v/pathmine/c2v_format.hpp"
#include "c2v/pathmine/vocab.hpp"
#include "c2v/util/error.hpp"
#include "c2v/util/rng.hpp"

namespace c2v::pathmine {
namespace {

const std::string kH1 = "235aea965a3b8c04d01b63c70b6f9539";
const std::string kH2 = "d41d8cd98f00b204e9800998ecf8427e";

BagOfContexts bag(std::int64_t id, Label label, std::vector<PathContext> ctx) {
  return {id, label, std::move(ctx)};
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

TEST(BuildVocab, Singleton) {
  const auto v = build_vocab({bag(0, Label::Safe, {{"x", kH1, "7"}})});
  EXPECT_EQ(v.values.size(), 4u);
  EXPECT_EQ(v.paths.size(), 3u);
  EXPECT_EQ(v.values.symbol(kPadId), kPadToken);
  EXPECT_EQ(v.values.symbol(kUnkId), kUnkToken);
  EXPECT_GE(v.value_id("x"), 2);
  EXPECT_GE(v.value_id("7"), 2);
  EXPECT_EQ(v.path_id(kH1), 2);
  EXPECT_EQ(v.tags.size(), 2u);
  EXPECT_EQ(v.tags.symbol(0), "safe");
  EXPECT_EQ(v.tags.symbol(1), "vuln");
}

TEST(BuildVocab, FrequencyThenLexicographicOrder) {
  const auto v = build_vocab({bag(0, Label::Safe, {{"b", kH1, "a"}, {"c", kH1, "b"}}),
                              bag(1, Label::Vuln, {{"d", kH2, "b"}})});
  EXPECT_EQ(v.values.symbol(2), "b");  // 3 occurrences
  EXPECT_EQ(v.values.symbol(3), "a");  // ties broken lexicographically
  EXPECT_EQ(v.values.symbol(4), "c");
  EXPECT_EQ(v.values.symbol(5), "d");
  EXPECT_EQ(v.values.frequency(2), 3u);
  EXPECT_EQ(v.paths.symbol(2), kH1);
}

TEST(BuildVocab, MinCountCutoff) {
  const auto v = build_vocab({bag(0, Label::Safe, {{"p", kH1, "p"}, {"q", kH1, "p"}})}, 2);
  EXPECT_GE(v.value_id("p"), 2);
  EXPECT_EQ(v.value_id("q"), kUnkId);
}

TEST(EncodeBag, UnknownsAndLength) {
  const auto v = build_vocab({bag(0, Label::Safe, {{"x", kH1, "7"}})});
  const auto known = encode_bag(bag(9, Label::Vuln, {{"x", kH1, "7"}}), v);
  EXPECT_EQ(known.sample_id, 9);
  EXPECT_EQ(known.label, 1);
  ASSERT_EQ(known.contexts.size(), 1u);
  EXPECT_GE(known.contexts[0].start, 2);
  EXPECT_GE(known.contexts[0].path, 2);
  const auto unknown = encode_bag(bag(9, Label::Safe, {{"x", kH2, "zz"}, {"7", kH1, "x"}}), v);
  ASSERT_EQ(unknown.contexts.size(), 2u);
  EXPECT_EQ(unknown.contexts[0].path, kUnkId);
  EXPECT_EQ(unknown.contexts[0].end, kUnkId);
  EXPECT_FALSE(unknown.contexts[0].is_pad());
}

TEST(EncodeBag, ReservedSpellingsAreNotPad) {
  const auto v = build_vocab({bag(0, Label::Safe, {{"x", kH1, "7"}})});
  EXPECT_EQ(v.value_id("<PAD>"), kUnkId);
}

TEST(Vocabulary, RandomRoundTrip) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<BagOfContexts> bags;
    for (int b = 0; b < 5; ++b) {
      std::vector<PathContext> ctx;
      for (int c = 0; c < 1 + static_cast<int>(rng.below(8)); ++c) {
        ctx.push_back({"v" + std::to_string(rng.below(10)),
                       std::string(32, "0123456789abcdef"[rng.below(16)]),
                       "w" + std::to_string(rng.below(10))});
      }
      bags.push_back(bag(b, rng.below(2) ? Label::Vuln : Label::Safe, ctx));
    }
    const auto v = build_vocab(bags);
    for (const auto& b : bags) {
      const auto e = encode_bag(b, v);
      for (std::size_t i = 0; i < b.contexts.size(); ++i) {
        EXPECT_EQ(v.values.symbol(e.contexts[i].start), b.contexts[i].start_value);
        EXPECT_EQ(v.paths.symbol(e.contexts[i].path), b.contexts[i].path_hash);
        EXPECT_EQ(v.values.symbol(e.contexts[i].end), b.contexts[i].end_value);
      }
    }
    const auto values = SymbolTable::deserialize(v.values.serialize("values"), "values", true);
    EXPECT_EQ(values, v.values);
    const auto dir = std::filesystem::temp_directory_path() / "c2v_vocab_rt";
    std::filesystem::create_directories(dir);
    v.write(dir);
    const auto back = Vocabulary::read(dir);
    EXPECT_EQ(back, v);
    EXPECT_EQ(back.digest(), v.digest());
  }
}

TEST(Vocabulary, SerializedForm) {
  const auto v = build_vocab({bag(0, Label::Safe, {{"x", kH1, "x"}})});
  EXPECT_EQ(v.values.serialize("values"),
            "#c2v-format 1 values\n0\t0\t<PAD>\n1\t0\t<UNK>\n2\t2\tx\n");
}

TEST(Vocabulary, RejectsCorruptTables) {
  EXPECT_EQ(kind_of([] { SymbolTable::deserialize("0\t0\t<PAD>\n", "values", true); }),
            ErrorKind::Format);
  EXPECT_EQ(kind_of([] {
              SymbolTable::deserialize("#c2v-format 1 values\n0\t0\t<PAD>\n1\t0\t<UNK>\n3\t1\tx\n",
                                       "values", true);
            }),
            ErrorKind::Format);
  EXPECT_EQ(kind_of([] { SymbolTable::deserialize("#c2v-format 1 values\n0\t0\tx\n", "values",
                                                  true); }),
            ErrorKind::Format);
  EXPECT_EQ(kind_of([] { Vocabulary::read("/nonexistent/vocab"); }), ErrorKind::Io);
}

TEST(C2vFormat, WriteReadRoundTrip) {
  const std::vector<BagOfContexts> bags = {
      bag(4, Label::Vuln, {{"x", kH1, "7"}, {"STR", kH2, "y"}}),
      bag(9, Label::Safe, {{"a", kH1, "b"}}),
  };
  std::ostringstream out;
  write_c2v(out, bags);
  EXPECT_EQ(out.str(), "#c2v-format 1\nvuln x," + kH1 + ",7 STR," + kH2 + ",y\nsafe a," + kH1 +
                           ",b\n");
  std::istringstream in(out.str());
  const auto back = read_c2v(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].label, Label::Vuln);
  EXPECT_EQ(back[0].contexts, bags[0].contexts);
  EXPECT_EQ(back[1].contexts, bags[1].contexts);
}

TEST(C2vFormat, RejectsBadLines) {
  for (const std::string text : {
           std::string("vuln x,") + kH1 + ",7\n",
           "#c2v-format 1\nmaybe x," + kH1 + ",7\n",
           std::string("#c2v-format 1\nvuln x,nothex,7\n"),
           "#c2v-format 1\nvuln x," + kH1 + "\n",
           std::string("#c2v-format 1\nvuln\n"),
           std::string(""),
       }) {
    std::istringstream in(text);
    EXPECT_EQ(kind_of([&] { read_c2v(in); }), ErrorKind::Format) << text;
  }
}

TEST(C2vFormat, HeaderOnlyIsEmpty) {
  std::istringstream in("#c2v-format 1\n");
  EXPECT_TRUE(read_c2v(in).empty());
}

}  // namespace
}  // namespace c2v::pathmine
