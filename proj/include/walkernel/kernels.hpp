// Copyright 2026 The walkernel Authors.
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


#ifndef WALKERNEL_KERNELS_HPP
#define WALKERNEL_KERNELS_HPP

#include "walkernel/assignment.hpp"
#include "walkernel/cartesian.hpp"
#include "walkernel/geometric.hpp"
#include "walkernel/gram.hpp"
#include "walkernel/kernel_config.hpp"
#include "walkernel/random_walk.hpp"
#include "walkernel/vertex_kernels.hpp"

#endif  // WALKERNEL_KERNELS_HPP
