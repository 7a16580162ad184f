// Copyright 2026 The mconv Authors.
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

#include "mconv/constrained.hpp"
#include "mconv/core.hpp"
#include "mconv/error.hpp"
#include "mconv/ext_value.hpp"
#include "mconv/flow.hpp"
#include "mconv/instances.hpp"
#include "mconv/oracle.hpp"
#include "mconv/point.hpp"
#include "mconv/polyhedral.hpp"
#include "mconv/polymatroid.hpp"
#include "mconv/rational.hpp"
#include "mconv/unconstrained.hpp"
#include "mconv/verify.hpp"
