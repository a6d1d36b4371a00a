// Copyright 2026 The Weft Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WEFT_WEFT_HPP_
#define WEFT_WEFT_HPP_

#include "weft/collider.hpp"
#include "weft/common.hpp"
#include "weft/geodesic.hpp"
#include "weft/mesh.hpp"
#include "weft/poisson.hpp"
#include "weft/shapes.hpp"
#include "weft/spatial.hpp"

#endif  // WEFT_WEFT_HPP_
