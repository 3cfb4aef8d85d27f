#pragma once

#include <string>
#include <string_view>

namespace portfolio {

// Canonical form of a journal title, used as the lookup key on both sides of
// a match: uppercase ASCII, Latin diacritics folded (Ä -> A, ø -> O, ß -> SS),
// "&" spelled out as "AND", punctuation other than hyphens dropped, whitespace
// collapsed to single spaces and trimmed. Idempotent. May return "" (callers
// treat an empty key as unmatchable).
std::string normalize_title(std::string_view raw);

}  // namespace portfolio
