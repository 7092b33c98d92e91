#include "c2v/harness/predict.hpp"

#include "c2v/cparse/parser.hpp"
#include "c2v/cparse/split.hpp"
#include "c2v/model/forward.hpp"
#include "c2v/pathmine/bag.hpp"

namespace c2v::harness {

Prediction predict_bag(const pathmine::EncodedBag& bag, const model::ModelParams& params) {
  const auto trace = model::forward(bag.contexts, {}, params);
  return {model::argmax_label(trace.probabilities),
          trace.probabilities(pathmine::Vocabulary::tag_id(Label::Vuln))};
}

PredictOutcome predict(std::string_view function_source, const model::ModelParams& params,
                       const pathmine::Vocabulary& vocab,
                       const pathmine::MiningLimits& limits) {
  try {
    const auto ast = cparse::parse_function_source(function_source);
    const auto bag = pathmine::extract_bag(ast, 0, Label::Safe, limits);
    return predict_bag(pathmine::encode_bag(bag, vocab), params);
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::LexError:
      case ErrorKind::ParseError:
      case ErrorKind::ParseUnsupported:
      case ErrorKind::EmptyBag:
        return Unscorable{e.kind(), e.what()};
      default:
        throw;
    }
  }
}

std::vector<PredictOutcome> predict_source(std::string_view source,
                                           const model::ModelParams& params,
                                           const pathmine::Vocabulary& vocab,
                                           const pathmine::MiningLimits& limits) {
  std::vector<PredictOutcome> out;
  for (const auto& chunk : cparse::split_functions(source)) {
    auto outcome = predict(chunk.text, params, vocab, limits);
    if (auto* u = std::get_if<Unscorable>(&outcome)) {
      u->reason = "function at line " + std::to_string(chunk.first_line) + ": " + u->reason;
    }
    out.push_back(std::move(outcome));
  }
  return out;
}

}  // namespace c2v::harness
