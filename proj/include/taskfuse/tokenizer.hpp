#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace taskfuse {

/// Lowercases and splits on every non-alphanumeric codepoint. No
/// stemming, no stopword removal; empty tokens are dropped. Case
/// folding covers ASCII, Latin-1/Latin Extended-A, Greek and Cyrillic;
/// other codepoints pass through unchanged and count as word
/// characters unless they sit in a punctuation block.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace taskfuse
