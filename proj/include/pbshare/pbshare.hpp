// Copyright 2026 The pbshare Authors
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

#include "pbshare/axioms.hpp"
#include "pbshare/core.hpp"
#include "pbshare/errors.hpp"
#include "pbshare/experiment.hpp"
#include "pbshare/fixtures.hpp"
#include "pbshare/metrics.hpp"
#include "pbshare/opt.hpp"
#include "pbshare/pabulib.hpp"
#include "pbshare/rational.hpp"
#include "pbshare/report.hpp"
#include "pbshare/rules.hpp"
