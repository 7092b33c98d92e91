#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "c2v/corpus/corpus.hpp"
#include "c2v/model/checkpoint.hpp"
#include "c2v/pathmine/paths.hpp"
#include "c2v/pathmine/vocab.hpp"
#include "c2v/util/error.hpp"

namespace c2v::harness {

struct Prediction {
  Label label = Label::Safe;
  double q_vuln = 0.0;
};

// Input that could not be turned into a bag of contexts.
struct Unscorable {
  ErrorKind kind = ErrorKind::ParseError;
  std::string reason;
};

using PredictOutcome = std::variant<Prediction, Unscorable>;

// Argmax over the two tags; q(vuln) = 0.5 exactly resolves to safe.
Prediction predict_bag(const pathmine::EncodedBag& bag, const model::ModelParams& params);

// Lexes, parses, mines and encodes one function, then scores it. Lex, parse
// and empty-bag failures come back as Unscorable.
PredictOutcome predict(std::string_view function_source, const model::ModelParams& params,
                       const pathmine::Vocabulary& vocab,
                       const pathmine::MiningLimits& limits);

// Splits a translation unit into functions and predicts each one, in
// source order.
std::vector<PredictOutcome> predict_source(std::string_view source,
                                           const model::ModelParams& params,
                                           const pathmine::Vocabulary& vocab,
                                           const pathmine::MiningLimits& limits);

}  // namespace c2v::harness
