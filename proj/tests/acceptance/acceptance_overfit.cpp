// Copyright 2026 The lietext Authors. All Rights Reserved.
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

#include "doctest.h"
#include "lietext/harness.hpp"
#include "timing.hpp"

using namespace lietext;

TEST_CASE("every architecture fits the 64-sentence fixture") {
  for (Architecture a : {Architecture::Linear, Architecture::Scnn, Architecture::Sclie, Architecture::Dpcnn,
                         Architecture::Dpclie}) {
    RunConfig c;
    c.model.architecture = a;
    c.optimizer = default_optimizer(a);
    c.data.name = "fixture";
    c.max_epochs = 200;
    c.patience = 200;
    c.stop_at_train_accuracy = 0.98;
    c.record_timing = false;
    testing::Stopwatch clock;
    const auto report = run_experiment<float>(c).report;
    const double secs = clock.seconds();
    const auto& run = report["runs"][0];
    const double acc = run["final_train_accuracy"].get<double>();
    MESSAGE(architecture_name(a) << ": train accuracy " << acc << " after " << run["training"]["epochs"].size()
                                 << " epochs in " << secs << " s");
    CHECK(report["data"]["sentences"] == 64);
    CHECK(acc >= 0.98);
    CHECK(run["training"]["epochs"].size() <= 200);
    CHECK(secs < 300.0);
  }
}
