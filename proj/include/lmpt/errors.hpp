/*
 * Copyright 2026 the lmpt authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace lmpt {

#define LMPT_ERROR(Name)                                                      \
    struct Name : std::runtime_error {                                       \
        explicit Name(const std::string& what) : std::runtime_error(what) {} \
    }

LMPT_ERROR(MalformedTarget);
LMPT_ERROR(InvalidSplit);
LMPT_ERROR(InfeasibleFused);
LMPT_ERROR(ConfigError);
LMPT_ERROR(UnknownToken);
LMPT_ERROR(DimensionMismatch);
LMPT_ERROR(UnknownLabel);
LMPT_ERROR(ZeroVector);
LMPT_ERROR(NonFinite);
LMPT_ERROR(EmptyEval);
LMPT_ERROR(DeadEnd);
LMPT_ERROR(MissingCheckpoint);
LMPT_ERROR(KeyMismatch);
LMPT_ERROR(IoError);

#undef LMPT_ERROR

}  // namespace lmpt
