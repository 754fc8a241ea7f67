// Copyright 2026 The ptolemaic-deletion Authors
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

#include "ptolemaic/cliques.hpp"
#include "ptolemaic/digraph.hpp"
#include "ptolemaic/fvsp.hpp"
#include "ptolemaic/generators.hpp"
#include "ptolemaic/graph.hpp"
#include "ptolemaic/icd.hpp"
#include "ptolemaic/io.hpp"
#include "ptolemaic/lp.hpp"
#include "ptolemaic/obstructions.hpp"
#include "ptolemaic/oracle.hpp"
#include "ptolemaic/pipeline.hpp"
