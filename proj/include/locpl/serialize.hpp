#pragma once

// JSON forms of the library's values. Words are lists of letter strings,
// indices are {"x": [...], "n": [...]}, rational functions are canonical
// strings. Every to_json has a matching from_json where a value can be
// rebuilt from its printed form.

#include <json.hpp>

#include "locpl/hyperlog.hpp"
#include "locpl/identities.hpp"
#include "locpl/numeric.hpp"
#include "locpl/words.hpp"

namespace locpl {

using Json = nlohmann::ordered_json;

Json to_json(const Word& w);
Json to_json(const CompositionIndex& c);
Json to_json(const ExtSeriesIndex& w);
Json to_json(const LinComb<Word>& lc);
Json to_json(const LinComb<CompositionIndex>& lc);
Json to_json(const LinComb<ExtSeriesIndex>& lc);
Json to_json(const IntegralContext& ctx);
Json to_json(const PolylogExpr& e);
Json to_json(const IdentityReport& r);
Json to_json(const VarietyIdeal& ideal);
Json to_json(const SeriesValue& v);
Json to_json(const FiniteDiffReport& r);

Word word_from_json(const Json& j);
CompositionIndex composition_from_json(const Json& j);
ExtSeriesIndex index_from_json(const Json& j);
LinComb<Word> word_lincomb_from_json(const Json& j);
LinComb<CompositionIndex> composition_lincomb_from_json(const Json& j);
LinComb<ExtSeriesIndex> index_lincomb_from_json(const Json& j);
IntegralContext context_from_json(const Json& j);
PolylogExpr expr_from_json(const Json& j);
VarietyIdeal ideal_from_json(const Json& j);

}  // namespace locpl
