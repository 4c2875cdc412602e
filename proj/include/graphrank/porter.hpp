#ifndef GRAPHRANK_PORTER_HPP_
#define GRAPHRANK_PORTER_HPP_

#include <string>
#include <string_view>

namespace graphrank {

// Porter (1980) suffix stripping, all five steps, matching the author's
// reference implementation (and therefore its published sample vocabulary):
// words of length <= 2 are returned unchanged, step 2 uses the bli->ble and
// logi->log rules. Expects a lowercase token; tokens made purely of digits
// pass through unchanged.
std::string porter_stem(std::string_view word);

} // namespace graphrank

#endif // GRAPHRANK_PORTER_HPP_
