// Copyright 2026 The FIFML Authors.
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

#include "fifml/campaign.hpp"
#include "fifml/core.hpp"
#include "fifml/descriptor.hpp"
#include "fifml/errno_table.hpp"
#include "fifml/injection.hpp"
#include "fifml/library.hpp"
#include "fifml/metrics.hpp"
#include "fifml/outcome.hpp"
#include "fifml/scheme.hpp"
#include "fifml/simulated_target.hpp"
#include "fifml/workload.hpp"
