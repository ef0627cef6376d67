// Copyright 2026 The sigfix authors
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

#include <string>

#include "json.hpp"

namespace sigfix {

/// Machine-readable result of one CLI invocation. The serialized form is
/// byte-stable for fixed inputs: it carries no timing and no environment
/// data (wall-clock timing goes to stderr only).
struct Report {
    std::string command;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    std::string verdict;  // pass | fail | found | none | indeterminate | error
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    nlohmann::ordered_json certificates = nlohmann::ordered_json::object();

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["inputs"] = inputs;
        j["verdict"] = verdict;
        j["counts"] = counts;
        j["certificates"] = certificates;
        return j;
    }
    std::string to_string() const { return to_json().dump(2) + "\n"; }

    /// 0 = pass/found, 1 = verified negative (or out of budget), 2 = error.
    int exit_code() const {
        if (verdict == "pass" || verdict == "found") return 0;
        if (verdict == "fail" || verdict == "none" || verdict == "indeterminate") return 1;
        return 2;
    }
};

}  // namespace sigfix
