// Copyright 2026 The GIE Authors. All Rights Reserved.
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

#include "gie/manifold.hpp"

namespace gie {

std::string geometry_name(Geometry g) {
  switch (g) {
    case Geometry::kEuclidean: return "euclidean";
    case Geometry::kHyperbolic: return "hyperbolic";
    case Geometry::kSpherical: return "spherical";
  }
  return "unknown";
}

}  // namespace gie
