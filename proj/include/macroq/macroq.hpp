// Copyright 2026 The macroq Authors.
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

#pragma once

#include "macroq/analytic.hpp"
#include "macroq/core.hpp"
#include "macroq/error.hpp"
#include "macroq/io.hpp"
#include "macroq/measure.hpp"
#include "macroq/mmqs.hpp"
#include "macroq/oracle.hpp"
#include "macroq/quadrature.hpp"
#include "macroq/random.hpp"
#include "macroq/states.hpp"
