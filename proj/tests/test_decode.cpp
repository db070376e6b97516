#include <doctest.h>

#include <sstream>

#include "pmc/codes.hpp"
#include "pmc/decode.hpp"

using namespace pmc;

namespace {

std::size_t count_uncorrected(const Experiment& e, const ErrorModel& dem, const ExperimentDecoder& dec) {
    std::size_t bad = 0;
    for (std::size_t v = 0; v < dem.n_variants(); ++v) {
        ShotOutcome o = dec.decode(dem.syndrome[v], dem.pre[v], dem.logical[v], DecoderMode::ec);
        if (o.pre_rejected) continue;
        bad += o.failed;
    }
    return bad;
}

}  // namespace

TEST_CASE("majority vote") {
    CHECK(majority_vote({true, true, false}));
    CHECK(!majority_vote({true, false, false}));
    CHECK(majority_vote({true}));
    CHECK_THROWS_AS(majority_vote({true, false}), UsageError);
}

TEST_CASE("5+3 window lookup has no collisions") {
    Experiment e = make_window_experiment(RoundKind::five_three_square, 2, IdleConvention::untouched);
    ErrorModel dem = build_error_model(e);
    LookupTable t = build_lookup(dem, 1);
    CHECK(t.collisions.empty());
    std::string table = export_table(t);
    CHECK(table.rfind("S ", 0) == 0);
    CHECK(table.find("# collisions\n") != std::string::npos);

    // an unseen syndrome is rejected under post-selection
    BitVec odd(dem.n_detectors);
    for (std::size_t k = 0; k < odd.size(); ++k) odd.set(k);
    if (!t.find(odd)) CHECK(decode_with_postselection(t, odd).status == Status::rejected);
    CHECK(decode_with_postselection(t, BitVec(dem.n_detectors)).status == Status::corrected);
}

TEST_CASE("5+2 window lookup collides") {
    Experiment e = make_window_experiment(RoundKind::five_two, 2, IdleConvention::none);
    ErrorModel dem = build_error_model(e);
    CHECK(!build_lookup(dem, 1).collisions.empty());
    CHECK(fault_distance(dem, 2).d_f == 2);
}

TEST_CASE("fault distance of a bare readout is 1") {
    Experiment e = make_circuit_experiment(parse_circuit("qubits 1\nM Z 0\n"), IdleConvention::none);
    ErrorModel dem = build_error_model(e);
    DistanceResult d = fault_distance(dem, 3);
    CHECK(d.d_f == 1);
    CHECK(d.witness.size() == 1);
}

TEST_CASE("windowed decoding corrects single faults over many rounds") {
    for (auto idle : {IdleConvention::none, IdleConvention::untouched}) {
        Experiment e = make_idle_experiment(RoundKind::five_three_square, 4, idle);
        ErrorModel dem = build_error_model(e);
        ExperimentDecoder dec(e, dem);
        CHECK(count_uncorrected(e, dem, dec) == 0);
    }
}

TEST_CASE("straight-line rounds correct single faults") {
    Experiment e = make_window_experiment(RoundKind::five_three_straightline, 3, IdleConvention::none);
    ErrorModel dem = build_error_model(e);
    ExperimentDecoder dec(e, dem);
    CHECK(dec.table().collisions.empty());
    CHECK(count_uncorrected(e, dem, dec) == 0);
}

TEST_CASE("closed circuit corrects accepted single faults") {
    for (auto idle : {IdleConvention::none, IdleConvention::untouched}) {
        Experiment e = make_closed_experiment(idle);
        CHECK(e.failure == FailureRule::majority);
        ErrorModel dem = build_error_model(e);
        ExperimentDecoder dec(e, dem);
        CHECK(dec.table().collisions.empty());
        CHECK(count_uncorrected(e, dem, dec) == 0);
        // the noiseless shot is accepted and correct
        ShotOutcome o = dec.decode(BitVec(dem.n_detectors), BitVec(e.pre_detectors.size()), 0, DecoderMode::ec_postselect);
        CHECK(!o.pre_rejected);
        CHECK(!o.post_rejected);
        CHECK(!o.failed);
    }
}

TEST_CASE("two-patch sequence corrects single faults") {
    Experiment e = make_xx_experiment(1, IdleConvention::none);
    ErrorModel dem = build_error_model(e);
    ExperimentDecoder dec(e, dem);
    CHECK(count_uncorrected(e, dem, dec) == 0);
}
