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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lietext/cli.hpp"

using namespace lietext;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int train(const std::string& arch, const fs::path& report, const fs::path& checkpoint, bool timing) {
  const std::string a = "model.architecture=\"" + arch + "\"";
  const std::string t = std::string("record_timing=") + (timing ? "true" : "false");
  const std::string r = report.string(), c = checkpoint.string();
  const char* argv[] = {"lietext", "train", "--fixture", "--seed", "7", "--override", a.c_str(), "max_epochs=4",
                        t.c_str(), "--out", r.c_str(), "--checkpoint", c.c_str()};
  std::ostringstream out, err;
  return run_cli(static_cast<int>(std::size(argv)), argv, out, err);
}

}  // namespace

TEST_CASE("identical config and seed give byte-identical reports and checkpoints") {
  const fs::path dir = fs::temp_directory_path() / "lietext_determinism";
  fs::create_directories(dir);
  for (const std::string arch : {"sclie", "dpclie", "scnn"}) {
    CAPTURE(arch);
    REQUIRE(train(arch, dir / "a.json", dir / "a.ckpt", false) == kExitOk);
    REQUIRE(train(arch, dir / "b.json", dir / "b.ckpt", false) == kExitOk);
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    CHECK(slurp(dir / "a.ckpt") == slurp(dir / "b.ckpt"));

    // With timing on, wall time lives only under "metadata".
    REQUIRE(train(arch, dir / "c.json", dir / "c.ckpt", true) == kExitOk);
    REQUIRE(train(arch, dir / "d.json", dir / "d.ckpt", true) == kExitOk);
    auto c = nlohmann::ordered_json::parse(slurp(dir / "c.json"));
    auto d = nlohmann::ordered_json::parse(slurp(dir / "d.json"));
    CHECK(c.contains("metadata"));
    c.erase("metadata");
    d.erase("metadata");
    CHECK(c.dump() == d.dump());
    CHECK(slurp(dir / "c.ckpt") == slurp(dir / "a.ckpt"));
  }
  fs::remove_all(dir);
}
