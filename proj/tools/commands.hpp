#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "bkmod/types.hpp"

namespace bktool {

using Json = nlohmann::ordered_json;

struct RunConfig {
    int p = 3;
    int f = 1;
    int e = 1;
    std::string typeSelector;  // ps:<k0>,<k0p> | cusp:<k0> | scalar:<k0>; empty selects all types
    bool ordered = false;
    bool exhaustive = false;
    int64_t samples = -1;  // -1: default sweep size
    uint64_t seed = 0;
    std::string format = "json";
    std::string outPath;
    int64_t trunc = 0;  // 0: default oracle truncation
    bool timing = false;
};

struct Report {
    std::string command;
    bkmod::LocalContext ctx;
    Json items = Json::array();
    int64_t pass = 0;
    int64_t fail = 0;
    int64_t millis = 0;

    void add(Json item, bool ok);
    Json to_json() const;
};

bkmod::LocalContext make_context(const RunConfig& cfg);
bkmod::TameType parse_type(const bkmod::LocalContext& ctx, const std::string& selector);

Report cmd_types(const RunConfig& cfg);
Report cmd_ptau(const RunConfig& cfg);
Report cmd_weights(const RunConfig& cfg);
Report cmd_oracle(const RunConfig& cfg);
Report cmd_bm(const RunConfig& cfg);
Report cmd_components(const RunConfig& cfg);

// re-evaluates every item of an earlier oracle report from its recorded inputs
Report replay_oracle(const Json& previous, const RunConfig& cfg);

std::string render(const Report& report, const std::string& format);

}  // namespace bktool
