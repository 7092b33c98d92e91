#pragma once

#include "c2v/model/forward.hpp"

namespace c2v::model {

// Cross-entropy of a traced forward pass, computed from the logits
// (log-sum-exp) so that confident predictions do not round to log(0).
double trace_loss(const ForwardTrace& trace, SymbolId label);

// Adds scale * d(loss)/d(params) for one traced bag into grads, reusing the
// dropout mask recorded in the trace. Embedding gradients are scattered
// into the rows the bag used; masked positions contribute nothing. For a
// batch mean, pass scale = 1 / batch_size.
void backward(const ForwardTrace& trace, SymbolId label, const ModelParams& params,
              double scale, ModelParams& grads);

}  // namespace c2v::model
