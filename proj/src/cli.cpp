#include "polibench/cli.hpp"

#include "polibench/errors.hpp"
#include "polibench/evaluation.hpp"
#include "polibench/ingestion.hpp"
#include "polibench/overlap.hpp"
#include "polibench/reporting.hpp"
#include "polibench/sampling.hpp"
#include "polibench/splits.hpp"
#include "polibench/storage.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace polibench::cli {

namespace fs = std::filesystem;
using storage::json;

namespace {

// Leaning datasets that duplicate each other and Article bias prediction;
// left out of multi-dataset training unless asked otherwise.
const std::vector<std::string> kDefaultSpilloverExclusions = {"Webis bias flipper 18", "Webis news bias 20"};

struct IngestArgs {
    std::string workdir = ".";
    std::vector<std::string> manifests;
};

struct OverlapArgs {
    std::string workdir = ".";
    double threshold = kDefaultSignificanceThreshold;
    unsigned threads = 0;
    std::string task;
};

struct SplitArgs {
    std::string workdir = ".";
    std::string mode;
    std::string task = "leaning";
    std::vector<std::string> datasets;
    std::vector<std::string> left_out;
    std::vector<std::string> exclude;
    bool exclude_significant = false;
    bool no_default_exclusions = false;
    std::optional<std::size_t> per_dataset_n;
    std::size_t val_n = kLeaveOneOutValidationRows;
    double val_frac = kHeldOutFraction;
    double test_frac = kHeldOutFraction;
    std::size_t val_per_dataset = kFullTrainValidationRows;
    std::string multiplier = "auto";
};

struct EvaluateArgs {
    std::string workdir = ".";
    std::string plan;
    std::string predictions;
    std::vector<std::string> trained_on;
    bool no_center = false;
    std::string model = "model";
    std::string run_id;
};

struct FilterArgs {
    std::string workdir = ".";
    std::string dataset;
    std::string predictions;
    std::string label = "non_political";
    double threshold = 0.99;
};

struct ReportArgs {
    std::string workdir = ".";
    std::string layout;
    std::vector<std::string> runs;
};

std::string fixed(double value, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << value;
    return s.str();
}

Task task_arg(const std::string& text) {
    const auto task = parse_task(text);
    if (!task) throw Error(ErrorKind::InvalidArgument, "unknown task '" + text + "' (leaning | politicalness)");
    return *task;
}

std::string class_counts_text(const std::map<ClassLabel, std::size_t>& counts, Task task) {
    std::string out;
    for (const ClassLabel l : labels_for(task)) {
        const auto it = counts.find(l);
        if (!out.empty()) out += " ";
        out += std::string(l.name()) + "=" + std::to_string(it == counts.end() ? 0 : it->second);
    }
    return out;
}

// Lookup of every stored document by id.
class DocumentIndex {
public:
    explicit DocumentIndex(const std::vector<Dataset>& datasets) {
        for (const Dataset& d : datasets) {
            for (const Document& doc : d.documents) by_id_.emplace(doc.id, &doc);
        }
    }

    Dataset collect(const std::string& name, Task task, const std::vector<std::string>& ids) const {
        Dataset out{name, task, {}};
        out.documents.reserve(ids.size());
        for (const auto& id : ids) {
            const auto it = by_id_.find(id);
            if (it == by_id_.end()) {
                throw Error(ErrorKind::UnknownDataset, "document '" + id + "' is not in the ingested datasets");
            }
            out.documents.push_back(*it->second);
        }
        return out;
    }

private:
    std::unordered_map<std::string_view, const Document*> by_id_;
};

std::vector<Dataset> datasets_of_task(const std::vector<Dataset>& all, Task task) {
    std::vector<Dataset> out;
    for (const Dataset& d : all) {
        if (d.task == task) out.push_back(d);
    }
    return out;
}

// ---------------------------------------------------------------- ingest

int cmd_ingest(const IngestArgs& args, std::ostream& out) {
    if (args.manifests.empty()) throw Error(ErrorKind::Config, "at least one --manifest is required");
    std::vector<Dataset> datasets;
    std::set<std::string> names;
    for (const auto& path : args.manifests) {
        const DatasetManifest manifest = load_manifest(path);
        if (!names.insert(manifest.name).second) {
            throw Error(ErrorKind::Config, path + ": dataset name '" + manifest.name + "' is used by another manifest");
        }
        try {
            datasets.push_back(load_dataset(manifest));
        } catch (const Error& e) {
            throw Error(e.kind(), path + ": " + e.what());
        }
    }
    storage::save_datasets(args.workdir, datasets);

    for (const Dataset& d : datasets) {
        double mean = 0.0;
        double sq = 0.0;
        for (const Document& doc : d.documents) mean += static_cast<double>(doc.body_word_count);
        if (!d.empty()) mean /= static_cast<double>(d.size());
        for (const Document& doc : d.documents) {
            const double dev = static_cast<double>(doc.body_word_count) - mean;
            sq += dev * dev;
        }
        const double sd = d.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(d.size()));
        out << d.name << "\t" << task_name(d.task) << "\t" << d.size() << " docs\t"
            << class_counts_text(d.class_counts(), d.task) << "\twords " << fixed(mean, 0) << " ± " << fixed(sd, 0)
            << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------- overlap

int cmd_overlap(const OverlapArgs& args, std::ostream& out) {
    std::vector<Dataset> datasets = storage::load_datasets(args.workdir);
    if (!args.task.empty()) datasets = datasets_of_task(datasets, task_arg(args.task));
    if (datasets.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "overlap needs at least 2 datasets, found " +
                                                    std::to_string(datasets.size()));
    }
    OverlapOptions options;
    options.threads = args.threads;
    const IntersectionMatrix matrix = intersection_matrix(datasets, options);

    const fs::path dir = fs::path(args.workdir) / "overlap";
    storage::write_text_file(dir / "intersections.json", storage::matrix_to_json(matrix, args.threshold).dump(2) + "\n");
    const RenderedTable table = render_intersection_table(matrix, args.threshold);
    storage::write_text_file(dir / "matrix.md", table.markdown);
    storage::write_text_file(dir / "matrix.tsv", table.tsv);

    std::ostringstream flags;
    std::ostringstream pairs;
    flags << "dataset_a\tdataset_b\tmatches_a\tmatches_b\tpct_of_a\tpct_of_b\n";
    pairs << "dataset_a\tdataset_b\tid_a\tid_b\n";
    std::size_t flagged = 0;
    for (const IntersectionReport& r : matrix.reports) {
        for (const auto& [a, b] : r.matched_pairs) pairs << r.dataset_a << '\t' << r.dataset_b << '\t' << a << '\t' << b << '\n';
        if (!flag_significant(r, args.threshold)) continue;
        ++flagged;
        flags << r.dataset_a << '\t' << r.dataset_b << '\t' << r.match_count << '\t' << r.match_count_b << '\t'
              << fixed(r.pct_of_a, 1) << '\t' << fixed(r.pct_of_b, 1) << '\n';
        out << "significant: " << r.dataset_a << " <-> " << r.dataset_b << " (" << r.match_count << " / "
            << r.match_count_b << " rows, " << fixed(r.pct_of_a, 1) << " % / " << fixed(r.pct_of_b, 1) << " %)\n";
    }
    storage::write_text_file(dir / "flags.tsv", flags.str());
    storage::write_text_file(dir / "pairs.tsv", pairs.str());
    out << datasets.size() << " datasets, " << flagged << " significant pair(s) at " << fixed(args.threshold, 1)
        << " %\n";
    return 0;
}

// ---------------------------------------------------------------- split

void add_exclusion(std::vector<Exclusion>& list, Exclusion ex) {
    for (const Exclusion& e : list) {
        if (e.dataset == ex.dataset) return;
    }
    list.push_back(std::move(ex));
}

std::vector<Exclusion> significant_exclusions(const fs::path& workdir, const std::vector<Dataset>& datasets) {
    const fs::path path = workdir / "overlap" / "intersections.json";
    if (!fs::exists(path)) {
        throw Error(ErrorKind::Config, path.string() + ": no overlap results (run overlap first)");
    }
    const json doc = storage::read_json_file(path);
    const double threshold = doc.value("threshold_pct", kDefaultSignificanceThreshold);
    const IntersectionMatrix matrix = storage::matrix_from_json(doc);
    std::set<std::string> present;
    for (const Dataset& d : datasets) present.insert(d.name);
    std::vector<Exclusion> out;
    for (const IntersectionReport& r : matrix.reports) {
        if (!flag_significant(r, threshold)) continue;
        if (!present.contains(r.dataset_a) || !present.contains(r.dataset_b)) continue;
        const bool a_smaller = r.size_a < r.size_b || (r.size_a == r.size_b && r.dataset_a > r.dataset_b);
        const std::string& smaller = a_smaller ? r.dataset_a : r.dataset_b;
        const std::string& other = a_smaller ? r.dataset_b : r.dataset_a;
        add_exclusion(out, {smaller, "overlaps " + other + " (" + fixed(std::max(r.pct_of_a, r.pct_of_b), 1) + " %)"});
    }
    return out;
}

void write_plan(const fs::path& workdir, const SplitPlan& plan, const DocumentIndex& index, std::ostream& out) {
    const fs::path dir = workdir / "splits";
    const std::string stem = storage::slug(plan.config_name);
    storage::write_text_file(dir / (stem + ".json"), storage::plan_to_json(plan).dump(2) + "\n");

    const auto write_part = [&](const fs::path& path, const Dataset& part) {
        std::ostringstream body;
        storage::write_documents(body, part.documents);
        storage::write_text_file(path, body.str());
    };
    const Dataset train = index.collect("train", plan.task, plan.train);
    const Dataset validation = index.collect("validation", plan.task, plan.validation);
    write_part(dir / stem / "train.jsonl", train);
    write_part(dir / stem / "validation.jsonl", validation);

    out << plan.config_name << ": train " << train.size() << " (" << class_counts_text(train.class_counts(), plan.task)
        << "), validation " << validation.size() << " (" << class_counts_text(validation.class_counts(), plan.task)
        << ")";
    std::map<ClassLabel, std::size_t> test_counts;
    std::size_t test_total = 0;
    for (const auto& [name, ids] : plan.test) {
        const Dataset part = index.collect(name, plan.task, ids);
        write_part(dir / stem / "test" / (storage::slug(name) + ".jsonl"), part);
        for (const auto& [label, count] : part.class_counts()) test_counts[label] += count;
        test_total += part.size();
    }
    out << ", test " << test_total << " (" << class_counts_text(test_counts, plan.task) << ")";
    if (plan.center_multiplier) {
        out << ", center multiplier " << fixed(*plan.center_multiplier, 4) << (plan.multiplier_capped ? " (capped)" : "");
    }
    out << '\n';
    for (const Exclusion& ex : plan.excluded_datasets) out << "  excluded: " << ex.dataset << " (" << ex.reason << ")\n";
}

int cmd_split(const SplitArgs& args, std::ostream& out) {
    const auto mode = parse_split_mode(args.mode);
    if (!mode) throw Error(ErrorKind::InvalidArgument, "unknown mode '" + args.mode + "' (loi | loo | full | aggregate)");
    const std::vector<Dataset> all = storage::load_datasets(args.workdir);
    const DocumentIndex index(all);

    std::optional<double> multiplier;
    if (args.multiplier != "auto") {
        try {
            std::size_t used = 0;
            multiplier = std::stod(args.multiplier, &used);
            if (used != args.multiplier.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidArgument, "--multiplier must be 'auto' or a number, got '" + args.multiplier + "'");
        }
        if (!(*multiplier >= 1.0)) throw Error(ErrorKind::InvalidArgument, "--multiplier must be at least 1");
    }

    if (*mode == SplitMode::Aggregate) {
        std::vector<Dataset> pool;
        if (args.datasets.empty()) {
            pool = datasets_of_task(all, Task::Politicalness);
        } else {
            for (const auto& name : args.datasets) {
                const auto it = std::find_if(all.begin(), all.end(), [&](const Dataset& d) { return d.name == name; });
                if (it == all.end()) throw Error(ErrorKind::UnknownDataset, "no dataset named '" + name + "'");
                pool.push_back(*it);
            }
        }
        if (pool.empty()) throw Error(ErrorKind::InvalidArgument, "no politicalness datasets to aggregate");
        const AggregateEval agg = make_aggregate_eval(pool, args.per_dataset_n.value_or(kAggregateRowsPerDataset));
        write_plan(args.workdir, aggregate_plan(agg), index, out);
        out << "aggregate: political " << agg.political << ", non_political " << agg.non_political << " ("
            << fixed(100.0 * agg.political_share(), 1) << " % political)\n";
        return 0;
    }

    const Task task = task_arg(args.task);
    const std::vector<Dataset> datasets = datasets_of_task(all, task);
    if (datasets.empty()) {
        throw Error(ErrorKind::InvalidArgument, "no ingested " + std::string(task_name(task)) + " datasets");
    }
    const auto known = [&](const std::string& name) {
        return std::any_of(datasets.begin(), datasets.end(), [&](const Dataset& d) { return d.name == name; });
    };

    if (*mode == SplitMode::LeaveOneIn) {
        LeaveOneInOptions options;
        options.train_n = args.per_dataset_n.value_or(kLeaveOneInTrainRows);
        options.val_frac = args.val_frac;
        options.test_frac = args.test_frac;
        std::vector<std::string> subjects = args.datasets;
        if (subjects.empty()) {
            for (const Dataset& d : datasets) subjects.push_back(d.name);
        }
        for (const auto& name : subjects) {
            write_plan(args.workdir, make_leave_one_in_benchmark(datasets, name, options), index, out);
        }
        return 0;
    }

    std::vector<Exclusion> exclusions;
    for (const auto& name : args.exclude) {
        if (!known(name)) throw Error(ErrorKind::UnknownDataset, "--exclude: no " + std::string(task_name(task)) +
                                                                     " dataset named '" + name + "'");
        add_exclusion(exclusions, {name, "excluded on the command line"});
    }
    if (args.exclude_significant) {
        for (auto& ex : significant_exclusions(args.workdir, datasets)) add_exclusion(exclusions, std::move(ex));
    }
    if (task == Task::Leaning && !args.no_default_exclusions) {
        for (const auto& name : kDefaultSpilloverExclusions) {
            if (known(name)) add_exclusion(exclusions, {name, "spillover with overlapping leaning datasets"});
        }
    }

    if (*mode == SplitMode::LeaveOneOut) {
        LeaveOneOutOptions options;
        options.per_dataset_n = args.per_dataset_n.value_or(kLeaveOneInTrainRows);
        options.test_frac = args.test_frac;
        options.center_multiplier = multiplier;
        options.exclusions = exclusions;
        options.val_n = args.val_n;
        std::vector<std::string> subjects = args.left_out;
        if (subjects.empty()) {
            for (const Dataset& d : datasets) {
                const bool excluded = std::any_of(exclusions.begin(), exclusions.end(),
                                                  [&](const Exclusion& ex) { return ex.dataset == d.name; });
                if (!excluded) subjects.push_back(d.name);
            }
        }
        for (const auto& name : subjects) {
            write_plan(args.workdir, make_leave_one_out(datasets, name, options), index, out);
        }
        return 0;
    }

    FullTrainOptions options;
    options.per_dataset_n = args.per_dataset_n.value_or(kLeaveOneInTrainRows);
    options.test_frac = args.test_frac;
    options.center_multiplier = multiplier;
    options.exclusions = exclusions;
    options.val_per_dataset = args.val_per_dataset;
    write_plan(args.workdir, make_full_train(datasets, options), index, out);
    return 0;
}

// ---------------------------------------------------------------- evaluate

fs::path resolve_plan_path(const fs::path& workdir, const std::string& plan) {
    if (fs::exists(plan)) return plan;
    const fs::path named = workdir / "splits" / (storage::slug(plan) + ".json");
    if (fs::exists(named)) return named;
    throw Error(ErrorKind::Io, "no split plan '" + plan + "' (tried " + plan + " and " + named.string() + ")");
}

std::vector<Prediction> read_prediction_files(const fs::path& source, Task task) {
    std::vector<fs::path> files;
    if (fs::is_directory(source)) {
        for (const auto& entry : fs::directory_iterator(source)) {
            if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
    } else if (fs::exists(source)) {
        files.push_back(source);
    } else {
        throw Error(ErrorKind::Io, source.string() + ": no such prediction file or directory");
    }
    std::vector<Prediction> preds;
    std::set<std::string> seen;
    for (const fs::path& file : files) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw Error(ErrorKind::Io, file.string() + ": cannot open");
        for (Prediction& p : storage::read_predictions(in, task, file.string())) {
            if (!seen.insert(p.doc_id).second) {
                throw Error(ErrorKind::ParseError, file.string() + ": second prediction for '" + p.doc_id + "'");
            }
            preds.push_back(std::move(p));
        }
    }
    return preds;
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out) {
    const fs::path workdir = args.workdir;
    const SplitPlan plan = storage::plan_from_json(storage::read_json_file(resolve_plan_path(workdir, args.plan)));
    const std::vector<Dataset> all = storage::load_datasets(workdir);
    const DocumentIndex index(all);

    std::map<std::string, Dataset> test_sets;
    for (const auto& [name, ids] : plan.test) test_sets.emplace(name, index.collect(name, plan.task, ids));

    std::map<std::string, std::vector<Prediction>> by_dataset;
    for (Prediction& p : read_prediction_files(args.predictions, plan.task)) {
        by_dataset[std::string(dataset_of_id(p.doc_id))].push_back(std::move(p));
    }
    const std::vector<std::string>& in_group = args.trained_on.empty() ? plan.trained_on : args.trained_on;

    const EvaluationReport report = evaluate_per_dataset(test_sets, by_dataset, !args.no_center, in_group);

    const std::string run_id = args.run_id.empty() ? storage::slug(args.model + "-" + plan.config_name) : args.run_id;
    json doc;
    doc["run_id"] = run_id;
    doc["model"] = args.model;
    doc["config"] = plan.config_name;
    doc["mode"] = split_mode_name(plan.mode);
    doc["subject"] = plan.subject ? json(*plan.subject) : json(nullptr);
    doc["trained_on"] = in_group;
    doc["report"] = storage::report_to_json(report);

    const fs::path dir = workdir / "reports" / storage::slug(run_id);
    const RenderedTable table = render_evaluation_table(report);
    storage::write_text_file(dir / "evaluation.json", doc.dump(2) + "\n");
    storage::write_text_file(dir / "evaluation.md", "# " + args.model + " on " + plan.config_name + "\n\n" + table.markdown);
    storage::write_text_file(dir / "evaluation.tsv", table.tsv);

    out << table.markdown;
    return 0;
}

// ---------------------------------------------------------------- filter

int cmd_filter(const FilterArgs& args, std::ostream& out) {
    std::vector<Dataset> all = storage::load_datasets(args.workdir);
    const auto it = std::find_if(all.begin(), all.end(), [&](const Dataset& d) { return d.name == args.dataset; });
    if (it == all.end()) throw Error(ErrorKind::UnknownDataset, "no dataset named '" + args.dataset + "'");
    const auto target = ClassLabel::parse(it->task, args.label);
    if (!target) {
        throw Error(ErrorKind::InvalidArgument, "'" + args.label + "' is not a " + std::string(task_name(it->task)) +
                                                    " label");
    }
    const std::vector<Prediction> preds = read_prediction_files(args.predictions, it->task);
    const Dataset filtered = apply_confidence_filter(*it, preds, *target, args.threshold);
    const std::size_t removed = it->size() - filtered.size();
    *it = filtered;
    storage::save_datasets(args.workdir, all);
    out << args.dataset << ": removed " << removed << " of " << removed + filtered.size() << " documents predicted "
        << args.label << " with confidence above " << args.threshold << '\n';
    return 0;
}

// ---------------------------------------------------------------- report

int cmd_report(const ReportArgs& args, std::ostream& out) {
    const fs::path workdir = args.workdir;
    std::vector<std::string> known;
    for (const Dataset& d : storage::load_datasets(workdir)) known.push_back(d.name);
    known.push_back("aggregate");

    ReportBundle bundle;
    const fs::path matrix_path = workdir / "overlap" / "intersections.json";
    if (fs::exists(matrix_path)) bundle.intersection_matrix = storage::matrix_from_json(storage::read_json_file(matrix_path));

    const fs::path splits = workdir / "splits";
    if (fs::is_directory(splits)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(splits)) {
            if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) bundle.split_summaries.push_back(summarize(storage::plan_from_json(storage::read_json_file(f))));
    }

    std::vector<std::string> runs = args.runs;
    const fs::path reports = workdir / "reports";
    if (runs.empty() && fs::is_directory(reports)) {
        for (const auto& e : fs::directory_iterator(reports)) {
            if (e.is_directory() && fs::exists(e.path() / "evaluation.json")) runs.push_back(e.path().filename().string());
        }
        std::sort(runs.begin(), runs.end());
    }
    std::set<std::string> modes;
    for (const auto& run : runs) {
        const fs::path path = reports / storage::slug(run) / "evaluation.json";
        if (!fs::exists(path)) throw Error(ErrorKind::Io, path.string() + ": no evaluation for run '" + run + "'");
        const json doc = storage::read_json_file(path);
        BenchmarkEntry entry;
        entry.model = doc.at("model").get<std::string>();
        entry.row = doc.contains("subject") && !doc["subject"].is_null() ? doc["subject"].get<std::string>()
                                                                        : doc.at("config").get<std::string>();
        entry.report = storage::report_from_json(doc.at("report"));
        modes.insert(doc.at("mode").get<std::string>());
        bundle.eval_reports.push_back(std::move(entry));
    }

    BenchmarkLayout layout = BenchmarkLayout::Existing;
    if (!args.layout.empty()) {
        const auto parsed = parse_layout(args.layout);
        if (!parsed) throw Error(ErrorKind::InvalidArgument, "unknown layout '" + args.layout + "' (loi | loo | existing)");
        layout = *parsed;
    } else if (modes.size() == 1 && *modes.begin() == "loi") {
        layout = BenchmarkLayout::LeaveOneIn;
    } else if (modes.size() == 1 && *modes.begin() == "loo") {
        layout = BenchmarkLayout::LeaveOneOut;
    }

    const auto unknown = undefined_datasets(bundle, known);
    if (!unknown.empty()) {
        std::string list;
        for (const auto& n : unknown) list += (list.empty() ? "" : ", ") + n;
        throw Error(ErrorKind::UnknownDataset, "reports mention datasets that are not ingested: " + list);
    }

    const std::string summary = render_bundle(bundle, layout);
    storage::write_text_file(reports / "summary.md", summary);
    if (!bundle.eval_reports.empty()) {
        const RenderedTable table = render_benchmark_table(bundle.eval_reports, layout);
        storage::write_text_file(reports / "benchmark.md", table.markdown);
        storage::write_text_file(reports / "benchmark.tsv", table.tsv);
    }
    out << summary;
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Political text dataset harmonization and benchmarking"};
    app.name("polibench");
    app.require_subcommand(1);

    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Load datasets from manifests into the workdir");
    ingest_cmd->add_option("--workdir", ingest.workdir, "Working directory")->capture_default_str();
    ingest_cmd->add_option("--manifest", ingest.manifests, "Dataset manifest (repeatable)")->required();

    OverlapArgs overlap;
    auto* overlap_cmd = app.add_subcommand("overlap", "Pairwise dataset intersections");
    overlap_cmd->add_option("--workdir", overlap.workdir, "Working directory")->capture_default_str();
    overlap_cmd->add_option("--threshold", overlap.threshold, "Significance threshold in percent")->capture_default_str();
    overlap_cmd->add_option("--threads", overlap.threads, "Worker threads (0 = all cores)")->capture_default_str();
    overlap_cmd->add_option("--task", overlap.task, "Only datasets of this task");

    SplitArgs split;
    auto* split_cmd = app.add_subcommand("split", "Build benchmark split plans");
    split_cmd->add_option("--workdir", split.workdir, "Working directory")->capture_default_str();
    split_cmd->add_option("--mode", split.mode, "loi | loo | full | aggregate")->required();
    split_cmd->add_option("--task", split.task, "leaning | politicalness")->capture_default_str();
    split_cmd->add_option("--dataset", split.datasets, "Left-in dataset (loi) or aggregated dataset; default all");
    split_cmd->add_option("--left-out", split.left_out, "Left-out dataset (loo); default all");
    split_cmd->add_option("--exclude", split.exclude, "Dataset kept out of multi-dataset training (repeatable)");
    split_cmd->add_flag("--exclude-significant", split.exclude_significant,
                        "Exclude the smaller dataset of every significant overlap pair");
    split_cmd->add_flag("--no-default-exclusions", split.no_default_exclusions,
                        "Do not exclude the Webis leaning datasets by default");
    split_cmd->add_option("--per-dataset-n", split.per_dataset_n,
                          "Rows sampled per dataset (default 2000; 1000 for aggregate)");
    split_cmd->add_option("--val-n", split.val_n, "Validation rows from the left-out dataset")->capture_default_str();
    split_cmd->add_option("--val-frac", split.val_frac, "Validation fraction (loi)")->capture_default_str();
    split_cmd->add_option("--test-frac", split.test_frac, "Test fraction")->capture_default_str();
    split_cmd->add_option("--val-per-dataset", split.val_per_dataset, "Validation rows per dataset (full)")
        ->capture_default_str();
    split_cmd->add_option("--multiplier", split.multiplier, "Center multiplier: auto or a number >= 1")
        ->capture_default_str();

    EvaluateArgs evaluate;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score prediction files against a split plan");
    evaluate_cmd->add_option("--workdir", evaluate.workdir, "Working directory")->capture_default_str();
    evaluate_cmd->add_option("--plan", evaluate.plan, "Plan file or config name")->required();
    evaluate_cmd->add_option("--predictions", evaluate.predictions, "Prediction file or directory of .jsonl files")
        ->required();
    evaluate_cmd->add_option("--trained-on", evaluate.trained_on, "In-distribution datasets (default from the plan)");
    evaluate_cmd->add_flag("--no-center", evaluate.no_center, "Model has no center class: score left/right only");
    evaluate_cmd->add_option("--model", evaluate.model, "Model name for tables")->capture_default_str();
    evaluate_cmd->add_option("--run-id", evaluate.run_id, "Report directory name (default <model>-<config>)");

    FilterArgs filter;
    auto* filter_cmd = app.add_subcommand("filter", "Drop documents a model confidently assigns to one label");
    filter_cmd->add_option("--workdir", filter.workdir, "Working directory")->capture_default_str();
    filter_cmd->add_option("--dataset", filter.dataset, "Dataset to filter in place")->required();
    filter_cmd->add_option("--predictions", filter.predictions, "Prediction file or directory")->required();
    filter_cmd->add_option("--label", filter.label, "Predicted label to drop")->capture_default_str();
    filter_cmd->add_option("--threshold", filter.threshold, "Drop when confidence is above this")->capture_default_str();

    ReportArgs report;
    auto* report_cmd = app.add_subcommand("report", "Render benchmark and summary tables");
    report_cmd->add_option("--workdir", report.workdir, "Working directory")->capture_default_str();
    report_cmd->add_option("--layout", report.layout, "loi | loo | existing (default from the runs)");
    report_cmd->add_option("--run", report.runs, "Run id to include (repeatable; default all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: Usage: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*ingest_cmd) return cmd_ingest(ingest, out);
        if (*overlap_cmd) return cmd_overlap(overlap, out);
        if (*split_cmd) return cmd_split(split, out);
        if (*evaluate_cmd) return cmd_evaluate(evaluate, out);
        if (*filter_cmd) return cmd_filter(filter, out);
        if (*report_cmd) return cmd_report(report, out);
    } catch (const Error& e) {
        err << "error: " << error_kind_name(e.kind()) << ": " << e.what() << '\n';
        return is_data_error(e.kind()) ? 2 : 1;
    } catch (const fs::filesystem_error& e) {
        err << "error: Io: " << e.what() << '\n';
        return 1;
    } catch (const json::exception& e) {
        err << "error: ParseError: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace polibench::cli
