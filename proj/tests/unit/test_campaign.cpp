#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "oracles.hpp"

using namespace rainbow;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

} // namespace

TEST(Campaign, RejectsEmptyGridAndBadTimeout) {
    CampaignSpec spec;
    EXPECT_THROW(spec.validate(), Error);
    spec.n_values = {5};
    spec.kernels = {10};
    spec.seeds = {0};
    EXPECT_NO_THROW(spec.validate());
    spec.timeout_ms = 0;
    EXPECT_THROW(spec.validate(), Error);
    EXPECT_THROW((void)parse_campaign(R"({"n":[5],"kernel":[10],"seeds":0})"), Error);
}

TEST(Campaign, KernelFactorsRoundUp) {
    CampaignSpec spec = parse_campaign(R"({"n":[7],"kernel_factor":["5/2", 4],"seeds":1})");
    EXPECT_EQ(spec.kernels_for(7), (std::vector<int>{18, 28}));
}

TEST(Campaign, RowsInGridOrderWithSummaries) {
    CampaignSpec spec =
        parse_campaign(R"({"n":[5,6],"kernel":[12,20],"method":["greedy_switch","exact"],"seeds":[4,9],"timeout_ms":10000})");
    CampaignResult r = run_campaign(spec);
    ASSERT_EQ(r.rows.size(), 16u);
    EXPECT_EQ(r.rows[0].n, 5);
    EXPECT_EQ(r.rows[0].kernel, 12);
    EXPECT_EQ(r.rows[0].method, Method::greedy_switch);
    EXPECT_EQ(r.rows[0].seed, 4u);
    EXPECT_EQ(r.rows[1].seed, 9u);
    EXPECT_EQ(r.rows[2].method, Method::exact);
    EXPECT_EQ(r.rows.back().n, 6);
    EXPECT_EQ(r.summaries.size(), 8u);
    auto text = lines(campaign_csv(r));
    ASSERT_EQ(text.size(), 1u + 16u + 8u);
    EXPECT_EQ(text[0], "n,kernel,delta,method,seed,status,matching_size,nodes,depth,millis,success_fraction");
    EXPECT_NE(text.back().find(",summary,"), std::string::npos);
    for (const CampaignRow& row : r.rows)
        if (row.status == Status::found) EXPECT_TRUE(row.verified);
}

TEST(Campaign, ParallelMatchesSequential) {
    CampaignSpec spec = parse_campaign(R"({"n":[10],"kernel":[25],"seeds":6,"workers":1})");
    CampaignResult a = run_campaign(spec);
    spec.workers = 3;
    CampaignResult b = run_campaign(spec);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].status, b.rows[i].status);
        EXPECT_EQ(a.rows[i].nodes, b.rows[i].nodes);
    }
}

TEST(Campaign, TimeoutRowsDoNotStopTheCampaign) {
    CampaignSpec spec = parse_campaign(R"({"n":[8],"kernel":[3],"method":["greedy_switch"],"seeds":3,"timeout_ms":1,"max_switch_len":8})");
    CampaignResult r = run_campaign(spec);
    EXPECT_EQ(r.rows.size(), 3u);
}

TEST(Campaign, ProofGuidedRowsCheckIdentities) {
    CampaignSpec spec = parse_campaign(R"({"n":[20],"kernel_factor":[4],"method":["proof_guided"],"seeds":5})");
    for (const CampaignRow& row : run_campaign(spec).rows) {
        EXPECT_EQ(row.status, Status::found);
        EXPECT_TRUE(row.identity_violations.empty());
    }
}

TEST(Campaign, ThresholdSweepIsMonotoneInKernel) {
    CampaignSpec spec = parse_campaign(
        R"({"suite":"threshold","n":[12],"kernel_factor":[2,"5/2",3,"7/2",4],"overlap":1,)"
        R"("method":["greedy_switch","exact"],"seeds":30,"timeout_ms":20000})");
    CampaignResult r = run_campaign(spec);
    std::map<Method, double> last;
    for (const CampaignSummary& s : r.summaries) {
        auto [it, fresh] = last.try_emplace(s.method, s.success_fraction());
        if (!fresh) {
            EXPECT_GE(s.success_fraction(), it->second) << s.kernel;
            it->second = s.success_fraction();
        }
    }
    EXPECT_EQ(last.size(), 2u);
}
