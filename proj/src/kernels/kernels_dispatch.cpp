// Copyright 2026-present the nltrans project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <cstring>

#include "nltrans/kernels.hpp"

namespace nltrans::kernels {

bool avx2_available() {
#if defined(NLTRANS_HAVE_AVX2) && (defined(__x86_64__) || defined(_M_X64))
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const Backend& active_backend() {
    static const Backend& chosen = []() -> const Backend& {
        const char* env = std::getenv("NLTRANS_KERNELS");
        if (env != nullptr && std::strcmp(env, "scalar") == 0) {
            return scalar_backend();
        }
        if (avx2_available()) return avx2_backend();
        return scalar_backend();
    }();
    return chosen;
}

}  // namespace nltrans::kernels
