// Copyright 2026 The ginoe-clt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GINOE_GINOE_HPP
#define GINOE_GINOE_HPP

#include "ginoe/errors.hpp"
#include "ginoe/rng.hpp"
#include "ginoe/parallel.hpp"
#include "ginoe/geometry.hpp"
#include "ginoe/specfun.hpp"
#include "ginoe/kernel.hpp"
#include "ginoe/pfaffian.hpp"
#include "ginoe/quadrature.hpp"
#include "ginoe/cumulants.hpp"
#include "ginoe/ensemble.hpp"
#include "ginoe/io.hpp"

#endif  // GINOE_GINOE_HPP
