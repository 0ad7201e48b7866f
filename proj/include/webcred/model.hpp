#pragma once

#include <bit>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "webcred/errors.hpp"
#include "webcred/learn.hpp"
#include "webcred/text.hpp"

namespace webcred::learn {

enum class LearnerKind { NaiveBayes, AdaBoost, GradientBoosting, Ridge, Svr };

struct LearnerSpec {
    LearnerKind kind = LearnerKind::GradientBoosting;
    double nb_alpha = 1.0;
    AdaBoostParams ada{};
    GradientBoostingParams gb{};
    double ridge_lambda = 1.0;
    LinearSvrParams svr{};

    bool is_regressor() const { return kind == LearnerKind::Ridge || kind == LearnerKind::Svr; }

    std::string name() const {
        switch (kind) {
            case LearnerKind::NaiveBayes: return "nb";
            case LearnerKind::AdaBoost: return "adaboost";
            case LearnerKind::GradientBoosting: return "gboost";
            case LearnerKind::Ridge: return "ridge";
            case LearnerKind::Svr: return "svr";
        }
        return "?";
    }

    static LearnerSpec parse(const std::string& name) {
        LearnerSpec spec;
        if (name == "nb") spec.kind = LearnerKind::NaiveBayes;
        else if (name == "adaboost") spec.kind = LearnerKind::AdaBoost;
        else if (name == "gboost") spec.kind = LearnerKind::GradientBoosting;
        else if (name == "ridge") spec.kind = LearnerKind::Ridge;
        else if (name == "svr") spec.kind = LearnerKind::Svr;
        else throw Error("unknown learner: " + name +
                         " (expected nb|adaboost|gboost|ridge|svr)");
        return spec;
    }
};

// Multiclass classifier facade: naive Bayes handles any class count
// natively, the boosted learners go one-vs-rest. A class missing from a
// training split degrades to a constant near-zero score instead of failing.
class ClassifierModel {
public:
    void fit(const Mat& x, const std::vector<int>& y, std::size_t n_classes,
             const LearnerSpec& spec) {
        spec_ = spec;
        n_classes_ = n_classes;
        ada_.clear();
        gb_.clear();
        class_present_.assign(n_classes, false);
        for (int label : y) {
            if (label < 0 || static_cast<std::size_t>(label) >= n_classes)
                throw Error("class label out of range");
            class_present_[static_cast<std::size_t>(label)] = true;
        }
        switch (spec.kind) {
            case LearnerKind::NaiveBayes:
                nb_.fit(x, y, spec.nb_alpha);
                break;
            case LearnerKind::AdaBoost:
            case LearnerKind::GradientBoosting: {
                const std::size_t n_models = n_classes == 2 ? 1 : n_classes;
                for (std::size_t c = 0; c < n_models; ++c) {
                    std::size_t positive = n_classes == 2 ? 1 : c;
                    std::vector<int> binary(y.size());
                    for (std::size_t i = 0; i < y.size(); ++i)
                        binary[i] = y[i] == static_cast<int>(positive) ? 1 : 0;
                    if (spec.kind == LearnerKind::AdaBoost) {
                        ada_.emplace_back();
                        if (class_present_[positive] && !all_same(binary))
                            ada_.back().fit(x, binary, spec.ada);
                        else
                            ada_.back() = constant_ada(class_present_[positive]);
                    } else {
                        gb_.emplace_back();
                        gb_.back().fit(x, binary, spec.gb); // handles constant labels
                    }
                }
                break;
            }
            default:
                throw Error("learner '" + spec.name() + "' is a regressor");
        }
    }

    std::vector<double> predict_proba(const std::vector<double>& x) const {
        std::vector<double> probs(n_classes_, 0.0);
        switch (spec_.kind) {
            case LearnerKind::NaiveBayes: {
                auto p = nb_.predict_proba(x);
                const auto& classes = nb_.classes();
                for (std::size_t c = 0; c < classes.size(); ++c)
                    probs[static_cast<std::size_t>(classes[c])] = p[c];
                break;
            }
            case LearnerKind::AdaBoost:
            case LearnerKind::GradientBoosting: {
                if (n_classes_ == 2) {
                    double p = spec_.kind == LearnerKind::AdaBoost
                                   ? ada_[0].positive_probability(x)
                                   : gb_[0].positive_probability(x);
                    probs[0] = 1.0 - p;
                    probs[1] = p;
                } else {
                    double total = 0.0;
                    for (std::size_t c = 0; c < n_classes_; ++c) {
                        probs[c] = spec_.kind == LearnerKind::AdaBoost
                                       ? ada_[c].positive_probability(x)
                                       : gb_[c].positive_probability(x);
                        total += probs[c];
                    }
                    if (total > 0)
                        for (double& p : probs) p /= total;
                    else
                        for (double& p : probs) p = 1.0 / static_cast<double>(n_classes_);
                }
                break;
            }
            default:
                throw Error("not a classifier");
        }
        return probs;
    }

    int predict(const std::vector<double>& x) const {
        auto p = predict_proba(x);
        std::size_t best = 0;
        for (std::size_t c = 1; c < p.size(); ++c)
            if (p[c] > p[best]) best = c;
        return static_cast<int>(best);
    }

    std::size_t n_classes() const { return n_classes_; }
    const LearnerSpec& spec() const { return spec_; }

    // serialization access
    MultinomialNb& mutable_nb() { return nb_; }
    const MultinomialNb& nb() const { return nb_; }
    std::vector<AdaBoostBinary>& mutable_ada() { return ada_; }
    const std::vector<AdaBoostBinary>& ada() const { return ada_; }
    std::vector<GradientBoostingBinary>& mutable_gb() { return gb_; }
    const std::vector<GradientBoostingBinary>& gb() const { return gb_; }
    void set_shape(const LearnerSpec& spec, std::size_t n_classes) {
        spec_ = spec;
        n_classes_ = n_classes;
    }

private:
    static bool all_same(const std::vector<int>& v) {
        for (int x : v)
            if (x != v[0]) return false;
        return true;
    }

    static AdaBoostBinary constant_ada(bool positive) {
        AdaBoostBinary m;
        Stump s;
        s.feature = 0;
        s.threshold = positive ? -1e300 : 1e300;
        s.polarity = 1;
        s.alpha = std::log(1e9);
        m.mutable_stumps().push_back(s);
        return m;
    }

    LearnerSpec spec_;
    std::size_t n_classes_ = 0;
    std::vector<bool> class_present_;
    MultinomialNb nb_;
    std::vector<AdaBoostBinary> ada_;
    std::vector<GradientBoostingBinary> gb_;
};

class RegressorModel {
public:
    void fit(const Mat& x, const std::vector<double>& y, const LearnerSpec& spec) {
        spec_ = spec;
        switch (spec.kind) {
            case LearnerKind::Ridge: ridge_.fit(x, y, spec.ridge_lambda); break;
            case LearnerKind::Svr: svr_.fit(x, y, spec.svr); break;
            case LearnerKind::GradientBoosting: gb_.fit(x, y, spec.gb); break;
            default: throw Error("learner '" + spec.name() + "' is not a regressor");
        }
    }

    double predict(const std::vector<double>& x) const {
        switch (spec_.kind) {
            case LearnerKind::Ridge: return ridge_.predict(x);
            case LearnerKind::Svr: return svr_.predict(x);
            case LearnerKind::GradientBoosting: return gb_.predict(x);
            default: throw Error("not a regressor");
        }
    }

    const LearnerSpec& spec() const { return spec_; }
    RidgeRegressor& mutable_ridge() { return ridge_; }
    const RidgeRegressor& ridge() const { return ridge_; }
    LinearSvr& mutable_svr() { return svr_; }
    const LinearSvr& svr() const { return svr_; }
    GradientBoostingRegressor& mutable_gbr() { return gb_; }
    const GradientBoostingRegressor& gbr() const { return gb_; }
    void set_spec(const LearnerSpec& spec) { spec_ = spec; }

private:
    LearnerSpec spec_;
    RidgeRegressor ridge_;
    LinearSvr svr_;
    GradientBoostingRegressor gb_;
};

// ---------------------------------------------------------------------------
// serializable trained model
// ---------------------------------------------------------------------------

namespace detail {

inline std::string dhex(double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[bits & 0xF];
        bits >>= 4;
    }
    return out;
}

inline double dunhex(const std::string& s) {
    if (s.size() != 16) throw Error("model file: bad hex double '" + s + "'");
    std::uint64_t bits = 0;
    for (char c : s) {
        bits <<= 4;
        if (c >= '0' && c <= '9') bits |= static_cast<std::uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') bits |= static_cast<std::uint64_t>(c - 'a' + 10);
        else throw Error("model file: bad hex double '" + s + "'");
    }
    return std::bit_cast<double>(bits);
}

inline void write_vector(std::ostream& out, const std::string& tag,
                         const std::vector<double>& v) {
    out << tag << ' ' << v.size();
    for (double x : v) out << ' ' << dhex(x);
    out << '\n';
}

inline std::vector<double> read_vector(std::istringstream& line) {
    std::size_t n;
    line >> n;
    std::vector<double> out(n);
    std::string hex;
    for (std::size_t i = 0; i < n; ++i) {
        line >> hex;
        out[i] = dunhex(hex);
    }
    return out;
}

} // namespace detail

// Trained learner plus its selection mask, schema and class order —
// everything needed to score a new page deterministically.
struct ModelArtifact {
    LearnerSpec spec;
    std::vector<std::string> schema;        // full (pre-selection) feature names
    std::vector<std::size_t> selection_mask; // indices into schema
    std::vector<std::string> class_names;    // empty for regression
    ClassifierModel classifier;
    RegressorModel regressor;

    bool is_regression() const { return class_names.empty(); }

    std::string schema_fingerprint() const {
        std::string joined;
        for (const auto& name : schema) {
            joined += name;
            joined += '\n';
        }
        return text::fnv1a64_hex(joined);
    }

    void check_fingerprint(const std::string& fp) const {
        if (fp != schema_fingerprint())
            throw SchemaError("feature schema fingerprint mismatch: model " +
                              schema_fingerprint() + " vs input " + fp);
    }

    std::vector<double> predict_proba(const std::vector<double>& full_row,
                                      const std::string& fp) const {
        check_fingerprint(fp);
        return classifier.predict_proba(apply_mask_row(full_row, selection_mask));
    }

    double predict_value(const std::vector<double>& full_row, const std::string& fp) const {
        check_fingerprint(fp);
        return regressor.predict(apply_mask_row(full_row, selection_mask));
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw StoreError("cannot write model file: " + path);
        write(out);
        out.flush();
        if (!out) throw StoreError("short write on model file: " + path);
    }

    void write(std::ostream& out) const {
        out << "webcred-model 1\n";
        out << "learner " << spec.name() << '\n';
        out << "param nb_alpha " << detail::dhex(spec.nb_alpha) << '\n';
        out << "param ada_rounds " << spec.ada.rounds << '\n';
        out << "param gb_trees " << spec.gb.n_trees << '\n';
        out << "param gb_depth " << spec.gb.max_depth << '\n';
        out << "param gb_lr " << detail::dhex(spec.gb.learning_rate) << '\n';
        out << "param ridge_lambda " << detail::dhex(spec.ridge_lambda) << '\n';
        out << "param svr_epsilon " << detail::dhex(spec.svr.epsilon) << '\n';
        out << "param svr_lambda " << detail::dhex(spec.svr.lambda) << '\n';
        out << "param svr_epochs " << spec.svr.epochs << '\n';
        out << "param svr_seed " << spec.svr.seed << '\n';
        out << "schema";
        for (const auto& s : schema) out << ' ' << s;
        out << '\n';
        out << "mask";
        for (std::size_t m : selection_mask) out << ' ' << m;
        out << '\n';
        out << "classes";
        for (const auto& c : class_names) out << ' ' << c;
        out << '\n';

        if (is_regression()) {
            switch (spec.kind) {
                case LearnerKind::Ridge: {
                    const auto& r = regressor.ridge();
                    detail::write_vector(out, "mean", r.scaler().mean);
                    detail::write_vector(out, "scale", r.scaler().scale);
                    detail::write_vector(out, "coef", r.coefficients());
                    out << "intercept " << detail::dhex(r.intercept()) << '\n';
                    break;
                }
                case LearnerKind::Svr: {
                    const auto& s = regressor.svr();
                    detail::write_vector(out, "mean", s.scaler().mean);
                    detail::write_vector(out, "scale", s.scaler().scale);
                    detail::write_vector(out, "coef", s.weights());
                    out << "intercept " << detail::dhex(s.bias()) << '\n';
                    break;
                }
                case LearnerKind::GradientBoosting: {
                    const auto& g = regressor.gbr();
                    out << "base " << detail::dhex(g.base()) << '\n';
                    write_trees(out, g.trees());
                    break;
                }
                default: throw Error("unsupported regressor kind");
            }
        } else {
            switch (spec.kind) {
                case LearnerKind::NaiveBayes: {
                    const auto& nb = classifier.nb();
                    out << "nb_classes";
                    for (int c : nb.classes()) out << ' ' << c;
                    out << '\n';
                    detail::write_vector(out, "log_prior", nb.log_prior());
                    out << "log_likelihood " << nb.log_likelihood().size() << '\n';
                    for (const auto& row : nb.log_likelihood())
                        detail::write_vector(out, "row", row);
                    break;
                }
                case LearnerKind::AdaBoost: {
                    out << "binary_models " << classifier.ada().size() << '\n';
                    for (const auto& model : classifier.ada()) {
                        out << "stumps " << model.stumps().size() << '\n';
                        for (const auto& s : model.stumps())
                            out << "stump " << s.feature << ' ' << detail::dhex(s.threshold)
                                << ' ' << s.polarity << ' ' << detail::dhex(s.alpha) << '\n';
                    }
                    break;
                }
                case LearnerKind::GradientBoosting: {
                    out << "binary_models " << classifier.gb().size() << '\n';
                    for (const auto& model : classifier.gb()) {
                        out << "base " << detail::dhex(model.base()) << '\n';
                        write_trees(out, model.trees());
                    }
                    break;
                }
                default: throw Error("unsupported classifier kind");
            }
        }
        out << "end\n";
    }

    std::string to_string() const {
        std::ostringstream out;
        write(out);
        return out.str();
    }

    static ModelArtifact load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw Error("cannot open model file: " + path);
        return read(in);
    }

    static ModelArtifact from_string(const std::string& data) {
        std::istringstream in(data);
        return read(in);
    }

    static ModelArtifact read(std::istream& in) {
        ModelArtifact art;
        std::string line;
        if (!std::getline(in, line) || line != "webcred-model 1")
            throw Error("model file: bad or missing version line");
        std::map<std::string, std::string> params;
        std::string learner_name;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string key;
            ls >> key;
            if (key == "end") break;
            if (key == "learner") {
                ls >> learner_name;
            } else if (key == "param") {
                std::string name, value;
                ls >> name >> value;
                params[name] = value;
            } else if (key == "schema") {
                std::string s;
                while (ls >> s) art.schema.push_back(s);
            } else if (key == "mask") {
                std::size_t m;
                while (ls >> m) art.selection_mask.push_back(m);
            } else if (key == "classes") {
                std::string c;
                while (ls >> c) art.class_names.push_back(c);
                read_body(in, art, learner_name, params);
                break;
            }
        }
        return art;
    }

private:
    static void write_trees(std::ostream& out, const std::vector<RegressionTree>& trees) {
        out << "trees " << trees.size() << '\n';
        for (const auto& tree : trees) {
            out << "tree " << tree.nodes.size() << '\n';
            for (const auto& n : tree.nodes)
                out << "node " << n.feature << ' ' << detail::dhex(n.threshold) << ' ' << n.left
                    << ' ' << n.right << ' ' << detail::dhex(n.value) << '\n';
        }
    }

    static std::vector<RegressionTree> read_trees(std::istream& in) {
        std::string line;
        if (!std::getline(in, line)) throw Error("model file: missing trees section");
        std::istringstream ls(line);
        std::string key;
        std::size_t n_trees;
        ls >> key >> n_trees;
        if (key != "trees") throw Error("model file: expected trees, got " + key);
        std::vector<RegressionTree> trees(n_trees);
        for (auto& tree : trees) {
            std::getline(in, line);
            std::istringstream ts(line);
            std::size_t n_nodes;
            ts >> key >> n_nodes;
            if (key != "tree") throw Error("model file: expected tree header");
            tree.nodes.resize(n_nodes);
            for (auto& node : tree.nodes) {
                std::getline(in, line);
                std::istringstream ns(line);
                std::string thr, val;
                ns >> key >> node.feature >> thr >> node.left >> node.right >> val;
                if (key != "node") throw Error("model file: expected node line");
                node.threshold = detail::dunhex(thr);
                node.value = detail::dunhex(val);
            }
        }
        return trees;
    }

    static void read_body(std::istream& in, ModelArtifact& art, const std::string& learner_name,
                          const std::map<std::string, std::string>& params) {
        art.spec = LearnerSpec::parse(learner_name);
        auto get = [&](const std::string& k) -> std::string {
            auto it = params.find(k);
            if (it == params.end()) throw Error("model file: missing param " + k);
            return it->second;
        };
        art.spec.nb_alpha = detail::dunhex(get("nb_alpha"));
        art.spec.ada.rounds = std::stoi(get("ada_rounds"));
        art.spec.gb.n_trees = std::stoi(get("gb_trees"));
        art.spec.gb.max_depth = std::stoi(get("gb_depth"));
        art.spec.gb.learning_rate = detail::dunhex(get("gb_lr"));
        art.spec.ridge_lambda = detail::dunhex(get("ridge_lambda"));
        art.spec.svr.epsilon = detail::dunhex(get("svr_epsilon"));
        art.spec.svr.lambda = detail::dunhex(get("svr_lambda"));
        art.spec.svr.epochs = std::stoi(get("svr_epochs"));
        art.spec.svr.seed = std::stoull(get("svr_seed"));

        std::string line, key;
        if (art.is_regression()) {
            art.regressor.set_spec(art.spec);
            switch (art.spec.kind) {
                case LearnerKind::Ridge:
                case LearnerKind::Svr: {
                    std::vector<double> mean, scale, coef;
                    double intercept = 0.0;
                    for (int field = 0; field < 4; ++field) {
                        std::getline(in, line);
                        std::istringstream ls(line);
                        ls >> key;
                        if (key == "mean") mean = detail::read_vector(ls);
                        else if (key == "scale") scale = detail::read_vector(ls);
                        else if (key == "coef") coef = detail::read_vector(ls);
                        else if (key == "intercept") {
                            std::string hex;
                            ls >> hex;
                            intercept = detail::dunhex(hex);
                        }
                    }
                    if (art.spec.kind == LearnerKind::Ridge) {
                        auto& r = art.regressor.mutable_ridge();
                        r.mutable_scaler().mean = mean;
                        r.mutable_scaler().scale = scale;
                        r.mutable_coefficients() = coef;
                        r.mutable_intercept() = intercept;
                    } else {
                        auto& s = art.regressor.mutable_svr();
                        s.mutable_scaler().mean = mean;
                        s.mutable_scaler().scale = scale;
                        s.mutable_weights() = coef;
                        s.mutable_bias() = intercept;
                        s.mutable_params() = art.spec.svr;
                    }
                    break;
                }
                case LearnerKind::GradientBoosting: {
                    std::getline(in, line);
                    std::istringstream ls(line);
                    std::string hex;
                    ls >> key >> hex;
                    auto& g = art.regressor.mutable_gbr();
                    g.mutable_params() = art.spec.gb;
                    g.mutable_base() = detail::dunhex(hex);
                    g.mutable_trees() = read_trees(in);
                    break;
                }
                default: throw Error("model file: unsupported regressor");
            }
        } else {
            art.classifier.set_shape(art.spec, art.class_names.size());
            switch (art.spec.kind) {
                case LearnerKind::NaiveBayes: {
                    std::getline(in, line);
                    std::istringstream cs(line);
                    cs >> key;
                    std::vector<int> classes;
                    int c;
                    while (cs >> c) classes.push_back(c);
                    std::getline(in, line);
                    std::istringstream ps(line);
                    ps >> key;
                    std::vector<double> log_prior = detail::read_vector(ps);
                    std::getline(in, line);
                    std::istringstream hs(line);
                    std::size_t n_rows;
                    hs >> key >> n_rows;
                    std::vector<std::vector<double>> ll(n_rows);
                    for (auto& row : ll) {
                        std::getline(in, line);
                        std::istringstream rs(line);
                        rs >> key;
                        row = detail::read_vector(rs);
                    }
                    art.classifier.mutable_nb().restore(std::move(classes), std::move(log_prior),
                                                        std::move(ll));
                    break;
                }
                case LearnerKind::AdaBoost: {
                    std::getline(in, line);
                    std::istringstream hs(line);
                    std::size_t n_models;
                    hs >> key >> n_models;
                    auto& models = art.classifier.mutable_ada();
                    models.resize(n_models);
                    for (auto& model : models) {
                        std::getline(in, line);
                        std::istringstream ms(line);
                        std::size_t n_stumps;
                        ms >> key >> n_stumps;
                        for (std::size_t s = 0; s < n_stumps; ++s) {
                            std::getline(in, line);
                            std::istringstream ss(line);
                            Stump st;
                            std::string thr, alpha;
                            ss >> key >> st.feature >> thr >> st.polarity >> alpha;
                            st.threshold = detail::dunhex(thr);
                            st.alpha = detail::dunhex(alpha);
                            model.mutable_stumps().push_back(st);
                        }
                    }
                    break;
                }
                case LearnerKind::GradientBoosting: {
                    std::getline(in, line);
                    std::istringstream hs(line);
                    std::size_t n_models;
                    hs >> key >> n_models;
                    auto& models = art.classifier.mutable_gb();
                    models.resize(n_models);
                    for (auto& model : models) {
                        std::getline(in, line);
                        std::istringstream bs(line);
                        std::string hex;
                        bs >> key >> hex;
                        model.mutable_params() = art.spec.gb;
                        model.mutable_base() = detail::dunhex(hex);
                        model.mutable_trees() = read_trees(in);
                    }
                    break;
                }
                default: throw Error("model file: unsupported classifier");
            }
        }
    }

};

} // namespace webcred::learn
