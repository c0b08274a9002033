// Copyright 2026 The stabscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace stabscope {

/// Environment variable consulted when no explicit worker count is given.
inline constexpr const char* kThreadsEnv = "STABSCOPE_THREADS";

/// Explicit value if set, else STABSCOPE_THREADS, else 1. Always >= 1.
std::size_t resolve_threads(std::optional<std::size_t> requested);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work items must
/// write disjoint outputs. The first exception thrown is rethrown here.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace stabscope
