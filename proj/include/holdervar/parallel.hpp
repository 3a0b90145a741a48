#pragma once

#include <functional>

namespace holdervar {

/// Chunked parallel loop over [0, n); every index is written by exactly one
/// worker, so results are deterministic regardless of the worker count.
/// Honors the pair-scan worker setting.
void parallel_for(int n, const std::function<void(int)>& body);

} // namespace holdervar
