// Acceptance checks: one PASS / FAIL (or SKIP) line per criterion.
// Exit status is non-zero when any criterion fails.

#include "oracles.hpp"
#include "synth.hpp"

#include "polibench/errors.hpp"
#include "polibench/evaluation.hpp"
#include "polibench/overlap.hpp"
#include "polibench/reporting.hpp"
#include "polibench/sampling.hpp"
#include "polibench/splits.hpp"
#include "polibench/storage.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

using namespace polibench;

namespace {

// Tolerances and sizes.
constexpr std::size_t kOracleCorpora = 60;
constexpr std::size_t kOracleMaxDocs = 500;
constexpr double kOracleBudgetSeconds = 60.0;
constexpr std::size_t kPerfRows = 20000;
constexpr double kPerfMinSpeedup = 10.0;
constexpr std::size_t kSamplingFixtures = 1000;
constexpr std::size_t kMultiplierFixtures = 200;
constexpr std::size_t kHygienePlans = 10000;
constexpr std::size_t kMetricSets = 1000;
constexpr double kMetricTolerance = 1e-9;
constexpr double kWebisPctTolerance = 1.0;      // percentage points
constexpr double kWebisCountTolerance = 0.02;   // relative
constexpr std::size_t kWebisPublishedMatches = 5132;

const ClassLabel L = Leaning::Left;
const ClassLabel C = Leaning::Center;
const ClassLabel R = Leaning::Right;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t uniform(synth::Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

struct Outcome {
    enum Status { Pass, Fail, Skip } status = Fail;
    std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {Outcome::Fail, std::string("exception: ") + e.what()};
    }
    const char* word = o.status == Outcome::Pass ? "PASS" : o.status == Outcome::Fail ? "FAIL" : "SKIP";
    if (o.status == Outcome::Fail) ++failures;
    std::cout << word << "  " << name << ": " << o.detail << std::endl;
}

Outcome verdict(bool ok, const std::string& detail) { return {ok ? Outcome::Pass : Outcome::Fail, detail}; }

std::string fmt(double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

// ------------------------------------------------------------------- overlap

int shape_index(RowShape s) {
    switch (s) {
        case RowShape::TitleOnly: return 0;
        case RowShape::BodyOnly: return 1;
        case RowShape::Both: return 2;
        case RowShape::Neither: return -1;
    }
    return -1;
}

Outcome overlap_oracle() {
    const auto start = Clock::now();
    synth::Rng rng(20240917);
    std::size_t discrepancies = 0;
    std::size_t matches = 0;
    std::set<std::pair<int, int>> cases;
    for (std::size_t k = 0; k < kOracleCorpora; ++k) {
        synth::OverlapShape shape;
        shape.rows_a = uniform(rng, 1, 250);
        shape.rows_b = uniform(rng, 1, kOracleMaxDocs - shape.rows_a);
        shape.planted = uniform(rng, 9, 90);
        shape.vocab = uniform(rng, 30, 2000);
        shape.body_words_min = uniform(rng, 1, 12);
        shape.body_words_max = shape.body_words_min + uniform(rng, 0, 60);
        const synth::OverlapCorpus c = synth::overlap_corpus(rng, shape);
        for (const bool swapped : {false, true}) {
            const Dataset& a = swapped ? c.b : c.a;
            const Dataset& b = swapped ? c.a : c.b;
            const auto expected = oracle::brute_force_matches(a, b);
            const KeyedDataset ka = make_keyed(a);
            const KeyedDataset kb = make_keyed(b);
            const auto got = find_matches(ka, kb);
            std::vector<std::pair<std::size_t, std::size_t>> diff;
            std::set_symmetric_difference(expected.begin(), expected.end(), got.begin(), got.end(),
                                          std::back_inserter(diff));
            discrepancies += diff.size();
            matches += expected.size();
            for (const auto& [i, j] : expected) {
                cases.emplace(shape_index(row_shape(ka.keys[i])), shape_index(row_shape(kb.keys[j])));
            }
        }
    }
    const double elapsed = seconds_since(start);
    return verdict(discrepancies == 0 && cases.size() == 9 && elapsed < kOracleBudgetSeconds,
                   std::to_string(kOracleCorpora) + " corpora x 2 directions, " + std::to_string(matches) +
                       " oracle pairs, " + std::to_string(discrepancies) + " discrepancies, " +
                       std::to_string(cases.size()) + "/9 shape cases matched, " + fmt(elapsed, 1) + " s (< " +
                       fmt(kOracleBudgetSeconds, 0) + " s)");
}

Outcome overlap_performance() {
    synth::Rng rng(7);
    synth::OverlapShape shape;
    shape.rows_a = kPerfRows;
    shape.rows_b = kPerfRows;
    shape.planted = 3000;
    shape.vocab = 5000;
    shape.body_words_min = 15;
    shape.body_words_max = 25;
    const synth::OverlapCorpus c = synth::overlap_corpus(rng, shape);

    auto start = Clock::now();
    const KeyedDataset ka = make_keyed(c.a);
    const KeyedDataset kb = make_keyed(c.b);
    const auto engine = find_matches(ka, kb, OverlapOptions{1});
    const double engine_s = seconds_since(start);

    start = Clock::now();
    const auto brute = oracle::brute_force_matches(c.a, c.b);
    const double brute_s = seconds_since(start);

    const double speedup = brute_s / std::max(engine_s, 1e-9);
    return verdict(engine == brute && speedup >= kPerfMinSpeedup,
                   std::to_string(kPerfRows) + "x" + std::to_string(kPerfRows) + ", engine " + fmt(engine_s, 2) +
                       " s (1 thread, keys included), brute force " + fmt(brute_s, 1) + " s, speedup " +
                       fmt(speedup, 1) + "x (>= " + fmt(kPerfMinSpeedup, 0) + "x), " + std::to_string(engine.size()) +
                       " pairs, outputs " + (engine == brute ? "identical" : "DIFFER"));
}

// ------------------------------------------------------------------ sampling

// Expected per-class counts, worked out from the rule text: even split in
// label order, everything capped to the smallest class once one runs dry.
std::map<ClassLabel, std::size_t> expected_counts(const std::map<ClassLabel, std::size_t>& pops, std::size_t n,
                                                  bool& capped) {
    std::map<ClassLabel, std::size_t> q;
    const std::size_t k = pops.size();
    std::size_t idx = 0;
    bool short_class = false;
    std::size_t smallest = SIZE_MAX;
    for (const auto& [label, pop] : pops) {
        q[label] = n / k + (idx++ < n % k ? 1 : 0);
        short_class = short_class || q[label] > pop;
        smallest = std::min(smallest, pop);
    }
    capped = short_class;
    if (short_class) {
        for (auto& [label, v] : q) v = std::min(v, smallest);
    }
    return q;
}

Outcome sampling_invariants() {
    synth::Rng rng(11);
    std::size_t violations = 0;
    std::size_t exhausted = 0;
    std::string first;
    const auto note = [&](const std::string& what) {
        if (violations++ == 0) first = what;
    };
    for (std::size_t f = 0; f < kSamplingFixtures; ++f) {
        std::map<ClassLabel, std::size_t> sizes;
        const bool two_class = uniform(rng, 0, 2) == 0;
        const std::size_t scale = uniform(rng, 1, 3) == 1 ? 20 : 400;
        sizes[L] = uniform(rng, 1, scale);
        if (!two_class) sizes[C] = uniform(rng, 1, scale);
        sizes[R] = uniform(rng, 1, scale);
        const Dataset d = synth::labeled(rng, "s" + std::to_string(f), Task::Leaning, sizes, uniform(rng, 1, 40));
        std::size_t total = 0;
        for (const auto& [l, n] : sizes) total += n;

        const bool by_fraction = uniform(rng, 0, 1) == 0;
        const double frac = static_cast<double>(uniform(rng, 1, 100)) / 100.0;
        const std::size_t rows = uniform(rng, 0, total + 20);
        const SampleSpec spec = by_fraction ? SampleSpec::fraction(frac) : SampleSpec::absolute(rows);
        const std::size_t n = by_fraction ? static_cast<std::size_t>(std::floor(frac * static_cast<double>(total) + 1e-9))
                                          : rows;

        const Dataset s1 = systematic_sample(d, spec);
        const Dataset s2 = systematic_sample(d, spec);
        if (document_ids(s1) != document_ids(s2)) note("non-deterministic output in fixture " + std::to_string(f));

        bool capped = false;
        const auto want = expected_counts(sizes, n, capped);
        exhausted += capped ? 1 : 0;
        const auto got_counts = s1.class_counts();
        std::size_t lo = SIZE_MAX;
        std::size_t hi = 0;
        bool any_exhausted = false;
        for (const auto& [label, q] : want) {
            const std::size_t g = got_counts.count(label) ? got_counts.at(label) : 0;
            if (g != q) note("class count mismatch in fixture " + std::to_string(f));
            lo = std::min(lo, g);
            hi = std::max(hi, g);
            any_exhausted = any_exhausted || g == sizes.at(label);
        }
        if (hi - lo > 1 && !any_exhausted) note("counts differ by more than 1 in fixture " + std::to_string(f));

        // rank picks recomputed directly
        std::vector<std::string> expected_ids;
        for (const auto& [label, q] : want) {
            std::vector<const Document*> members;
            for (const auto& doc : d.documents) {
                if (d.label_of(doc) == label) members.push_back(&doc);
            }
            std::sort(members.begin(), members.end(), [](const Document* a, const Document* b) {
                return std::tie(a->body_word_count, a->id) < std::tie(b->body_word_count, b->id);
            });
            for (std::size_t i = 0; i < q; ++i) expected_ids.push_back(members[i * members.size() / q]->id);
        }
        if (expected_ids != document_ids(s1)) note("rank picks differ from floor(i*N/q) in fixture " + std::to_string(f));
    }
    return verdict(violations == 0, std::to_string(kSamplingFixtures) + " fixtures, " + std::to_string(violations) +
                                        " violations" + (first.empty() ? "" : " (first: " + first + ")") + ", " +
                                        std::to_string(exhausted) + " under the exhaustion rule");
}

Outcome center_multiplier() {
    synth::Rng rng(13);
    std::size_t violations = 0;
    std::size_t underrepresented = 0;
    std::size_t worst_spread = 0;
    std::size_t worst_datasets = 0;
    std::size_t capped = 0;
    for (std::size_t f = 0; f < kMultiplierFixtures; ++f) {
        const std::size_t n = uniform(rng, 30, 300);
        const std::size_t k2 = uniform(rng, 1, 6);
        const std::size_t k3 = uniform(rng, 1, 4);
        std::vector<Dataset> pool;
        for (std::size_t i = 0; i < k2 + k3; ++i) {
            std::map<ClassLabel, std::size_t> sizes;
            sizes[L] = n + uniform(rng, 0, 50);
            sizes[R] = n + uniform(rng, 0, 50);
            if (i >= k2) sizes[C] = n * (k2 + k3) + uniform(rng, 0, 50);  // enough Center rows to lift
            pool.push_back(synth::labeled(rng, "d" + std::to_string(i), Task::Leaning, sizes, 10));
        }
        const CenterMultiplier m = compute_center_multiplier(pool, n);
        capped += m.capped ? 1 : 0;
        const auto totals = concat_balanced(pool, n, m.value).class_counts();
        const std::size_t hi = std::max({totals.at(L), totals.at(C), totals.at(R)});
        const std::size_t lo = std::min({totals.at(L), totals.at(C), totals.at(R)});
        if (hi - lo > worst_spread) {
            worst_spread = hi - lo;
            worst_datasets = pool.size();
        }
        if (m.capped || hi - lo > pool.size()) ++violations;

        const auto plain = concat_balanced(pool, n, 1.0).class_counts();
        if (plain.at(C) < std::min(plain.at(L), plain.at(R))) ++underrepresented;
    }
    return verdict(violations == 0 && underrepresented == kMultiplierFixtures,
                   std::to_string(kMultiplierFixtures) + " mixed 2/3-class fixtures: worst max-min spread " +
                       std::to_string(worst_spread) + " with " +
                       std::to_string(worst_datasets) + " datasets (bound: dataset count), " + std::to_string(violations) +
                       " violations, " + std::to_string(capped) + " capped; m=1 leaves Center under-represented in " +
                       std::to_string(underrepresented) + "/" + std::to_string(kMultiplierFixtures));
}

// -------------------------------------------------------------------- splits

std::size_t count_violations(const SplitPlan& plan, const std::set<std::string>& forbidden_train,
                             const std::string& validation_only) {
    std::size_t v = 0;
    std::set<std::string> train;
    std::set<std::string> val;
    std::set<std::string> test;
    for (const auto& id : plan.train) v += train.insert(id).second ? 0 : 1;
    for (const auto& id : plan.validation) v += val.insert(id).second ? 0 : 1;
    for (const auto& [name, ids] : plan.test) {
        for (const auto& id : ids) {
            v += test.insert(id).second ? 0 : 1;
            v += std::string(dataset_of_id(id)) == name ? 0 : 1;
        }
    }
    for (const auto& id : val) v += train.count(id) + test.count(id);
    for (const auto& id : train) v += test.count(id);
    for (const auto& id : train) v += forbidden_train.count(std::string(dataset_of_id(id)));
    if (!validation_only.empty()) {
        for (const auto& id : val) v += std::string(dataset_of_id(id)) == validation_only ? 0 : 1;
    }
    v += check_hygiene(plan).clean() ? 0 : 1;
    return v;
}

Outcome split_hygiene() {
    synth::Rng rng(17);
    std::size_t violations = 0;
    std::size_t built = 0;
    std::size_t too_small = 0;
    std::map<std::string, std::size_t> per_mode;
    for (std::size_t p = 0; p < kHygienePlans; ++p) {
        const std::size_t mode = p % 5;
        const std::size_t k = uniform(rng, 2, 5);
        std::vector<Dataset> ds;
        for (std::size_t i = 0; i < k; ++i) {
            std::map<ClassLabel, std::size_t> sizes;
            std::string name = "d" + std::to_string(i);
            if (mode == 4) {
                sizes[Politicalness::NonPolitical] = uniform(rng, 0, 40);
                sizes[Politicalness::Political] = uniform(rng, 1, 40);
                ds.push_back(synth::labeled(rng, name, Task::Politicalness, sizes, 8));
                continue;
            }
            sizes[L] = uniform(rng, 20, 60);
            if (uniform(rng, 0, 1)) sizes[C] = uniform(rng, 20, 60);
            sizes[R] = uniform(rng, 20, 60);
            ds.push_back(synth::labeled(rng, name, Task::Leaning, sizes, 8));
        }
        const std::string subject = ds[uniform(rng, 0, k - 1)].name;
        std::vector<Exclusion> exclusions;
        std::set<std::string> forbidden;
        for (const Dataset& d : ds) {
            if (d.name != subject && uniform(rng, 0, 3) == 0 && exclusions.size() + 2 < k) {
                exclusions.push_back({d.name, "random"});
                forbidden.insert(d.name);
            }
        }
        try {
            SplitPlan plan;
            std::string validation_only;
            if (mode == 0) {
                plan = make_leave_one_in(ds.front());
            } else if (mode == 1) {
                plan = make_leave_one_in_benchmark(ds, subject);
            } else if (mode == 2) {
                LeaveOneOutOptions o;
                o.per_dataset_n = uniform(rng, 5, 80);
                o.val_n = uniform(rng, 1, 60);
                o.exclusions = exclusions;
                plan = make_leave_one_out(ds, subject, o);
                forbidden.insert(subject);
                validation_only = subject;
            } else if (mode == 3) {
                FullTrainOptions o;
                o.per_dataset_n = uniform(rng, 5, 80);
                o.val_per_dataset = uniform(rng, 1, 30);
                o.exclusions = exclusions;
                plan = make_full_train(ds, o);
            } else {
                plan = aggregate_plan(make_aggregate_eval(ds, uniform(rng, 5, 60)));
            }
            if (mode != 2 && mode != 3) forbidden.clear();
            violations += count_violations(plan, forbidden, validation_only);
            ++built;
            ++per_mode[std::string(split_mode_name(plan.mode))];
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::TooSmall) throw;
            ++too_small;
        }
    }
    std::string modes;
    for (const auto& [m, n] : per_mode) modes += (modes.empty() ? "" : ", ") + m + " " + std::to_string(n);
    return verdict(violations == 0 && built + too_small == kHygienePlans && built >= kHygienePlans * 99 / 100,
                   std::to_string(built) + " plans built (" + modes + "), " + std::to_string(too_small) +
                       " rejected as TooSmall, " + std::to_string(violations) + " violations");
}

// ------------------------------------------------------------------- metrics

Outcome metrics_oracle() {
    synth::Rng rng(19);
    double worst = 0.0;
    std::size_t degenerate = 0;
    for (std::size_t s = 0; s < kMetricSets; ++s) {
        const bool binary = uniform(rng, 0, 3) == 0;
        const std::vector<ClassLabel> labels = binary ? std::vector<ClassLabel>{L, R} : std::vector<ClassLabel>{L, C, R};
        const std::size_t n = uniform(rng, 1, 60);
        const std::size_t kind = s % 5;  // 0: single-class golds, 1: single predicted class, else random
        const ClassLabel fixed_gold = labels[uniform(rng, 0, labels.size() - 1)];
        const ClassLabel fixed_pred = labels[uniform(rng, 0, labels.size() - 1)];
        std::vector<ClassLabel> golds;
        std::vector<ClassLabel> preds;
        for (std::size_t i = 0; i < n; ++i) {
            golds.push_back(kind == 0 ? fixed_gold : labels[uniform(rng, 0, labels.size() - 1)]);
            preds.push_back(kind == 1 ? fixed_pred : labels[uniform(rng, 0, labels.size() - 1)]);
        }
        degenerate += kind <= 1 ? 1 : 0;
        const Metrics got = macro_metrics(confusion_matrix(golds, preds, labels));
        const Metrics want = oracle::metrics(golds, preds, labels);
        worst = std::max({worst, std::abs(got.accuracy - want.accuracy), std::abs(got.precision - want.precision),
                          std::abs(got.recall - want.recall), std::abs(got.f1 - want.f1)});
    }

    // equal-weight averaging over datasets of very different sizes
    const std::vector<Metrics> pair = {{0.8, 0.8, 0.8, 0.8}, {0.4, 0.4, 0.4, 0.4}};
    const Metrics avg = average_metrics(pair);
    const bool averaging = avg.f1 == (0.8 + 0.4) / 2 && percent_one_decimal(avg.f1) == "60.0" &&
                           std::abs(avg.f1 - 0.6) <= std::numeric_limits<double>::epsilon();

    Dataset big{"big", Task::Leaning, {}};
    Dataset small{"small", Task::Leaning, {}};
    std::vector<Prediction> pbig;
    std::vector<Prediction> psmall;
    for (std::size_t i = 0; i < 10000; ++i) {
        Document d = make_document(make_document_id("big", i), std::nullopt, "x");
        d.leaning = i % 2 ? Leaning::Left : Leaning::Right;
        pbig.push_back({d.id, *d.leaning, 1.0});
        big.documents.push_back(d);
    }
    for (std::size_t i = 0; i < 100; ++i) {
        Document d = make_document(make_document_id("small", i), std::nullopt, "x");
        d.leaning = i % 2 ? Leaning::Left : Leaning::Right;
        psmall.push_back({d.id, Leaning::Left, 1.0});
        small.documents.push_back(d);
    }
    const EvaluationReport r =
        evaluate_per_dataset({{"big", big}, {"small", small}}, {{"big", pbig}, {"small", psmall}}, true, {});
    const double fb = r.per_dataset.at("big").metrics.f1;
    const double fs = r.per_dataset.at("small").metrics.f1;
    const bool size_independent = r.overall && r.overall->f1 == (fb + fs) / 2;

    return verdict(worst <= kMetricTolerance && averaging && size_independent,
                   std::to_string(kMetricSets) + " prediction sets (" + std::to_string(degenerate) +
                       " degenerate), max |diff| " + [&] {
                           std::ostringstream s;
                           s << std::scientific << std::setprecision(1) << worst;
                           return s.str();
                       }() + " (<= 1e-9); mean(0.8, 0.4) = " + percent_one_decimal(avg.f1) + " %" +
                       (averaging ? "" : " WRONG") + "; 10000 vs 100 docs averaged with equal weight" +
                       (size_independent ? "" : " FAILED"));
}

Outcome confidence_filter() {
    const std::vector<double> confidences = {0.98, 0.99, 0.990001, 1.0};
    const std::vector<ClassLabel> both = {Politicalness::NonPolitical, Politicalness::Political};
    std::size_t wrong = 0;
    std::size_t cases = 0;
    for (const ClassLabel target : both) {
        Dataset d{"f", Task::Politicalness, {}};
        std::vector<Prediction> preds;
        std::vector<std::string> expected;
        std::size_t i = 0;
        for (const ClassLabel predicted : both) {
            for (const double c : confidences) {
                Document doc = make_document(make_document_id("f", i++), std::nullopt, "text");
                doc.politicalness = Politicalness::Political;
                preds.push_back({doc.id, predicted, c});
                if (!(predicted == target && c > 0.99)) expected.push_back(doc.id);
                d.documents.push_back(doc);
                ++cases;
            }
        }
        const Dataset kept = apply_confidence_filter(d, preds, target, 0.99);
        wrong += document_ids(kept) == expected ? 0 : 1;
        wrong += kept.size() == d.size() - 2 ? 0 : 1;
    }
    return verdict(wrong == 0, std::to_string(cases) + " boundary cases over both target labels, " +
                                   std::to_string(wrong) + " mismatches (only 0.990001 and 1.0 removed)");
}

// --------------------------------------------------------------- full scale

Outcome webis_full_scale() {
    const char* workdir = std::getenv("POLIBENCH_FULLSCALE_WORKDIR");
    if (workdir == nullptr || *workdir == '\0') {
        return {Outcome::Skip, "set POLIBENCH_FULLSCALE_WORKDIR to an ingested workdir with the original datasets"};
    }
    const auto datasets = storage::load_datasets(workdir);
    const auto find = [&](const std::string& name) -> const Dataset& {
        for (const Dataset& d : datasets) {
            if (d.name == name) return d;
        }
        throw Error(ErrorKind::UnknownDataset, "full-scale workdir lacks '" + name + "'");
    };
    const Dataset& flipper = find("Webis bias flipper 18");
    const Dataset& news = find("Webis news bias 20");
    const IntersectionReport fr = intersect_datasets(flipper, news);
    const IntersectionReport nr = intersect_datasets(news, flipper);
    const auto within_count = [](std::size_t n) {
        return std::abs(static_cast<double>(n) - static_cast<double>(kWebisPublishedMatches)) <=
               kWebisCountTolerance * static_cast<double>(kWebisPublishedMatches);
    };
    const bool ok = std::abs(fr.pct_of_a - 80.2) <= kWebisPctTolerance &&
                    std::abs(nr.pct_of_a - 66.5) <= kWebisPctTolerance && within_count(fr.match_count) &&
                    within_count(nr.match_count);
    return verdict(ok, "flipper row " + fmt(fr.pct_of_a, 1) + " % (" + std::to_string(fr.match_count) +
                           " rows), news bias row " + fmt(nr.pct_of_a, 1) + " % (" + std::to_string(nr.match_count) +
                           " rows); expected 80.2 / 66.5 % +-1 and 5132 rows +-2 %");
}

}  // namespace

int main() {
    report("overlap oracle equivalence", overlap_oracle);
    report("overlap performance", overlap_performance);
    report("sampling invariants", sampling_invariants);
    report("center multiplier", center_multiplier);
    report("split hygiene", split_hygiene);
    report("metrics oracle", metrics_oracle);
    report("confidence filter", confidence_filter);
    report("webis intersection (full scale)", webis_full_scale);
    return failures == 0 ? 0 : 1;
}
