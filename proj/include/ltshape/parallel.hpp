// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace ltshape {

/// Worker count used by the internally parallel passes. 0 means hardware
/// concurrency. Results never depend on this setting.
void set_thread_count(unsigned threads);
unsigned thread_count();
/// The raw setting passed to set_thread_count() (0 if never set).
unsigned thread_count_setting();

/// Split [begin, end) into contiguous chunks and run `body(chunk_begin,
/// chunk_end)` on each, one chunk per worker. Blocks until all return; the
/// first exception thrown by any worker is rethrown.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace ltshape
