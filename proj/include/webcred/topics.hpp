#pragma once

#include <array>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "webcred/errors.hpp"
#include "webcred/naive_bayes.hpp"

namespace webcred::feat {

inline const std::array<std::string, 6>& topic_categories() {
    static const std::array<std::string, 6> cats = {"business",      "entertainment", "politics",
                                                    "religion",      "sports",        "tech"};
    return cats;
}

// Small bundled training corpus for the per-topic text models. Deliberately
// desk-scale; swap in a richer corpus via the topics table file for serious
// runs.
inline const std::vector<std::pair<std::string, std::string>>& builtin_topic_corpus() {
    static const std::vector<std::pair<std::string, std::string>> corpus = {
        {"business", "the company reported quarterly earnings and revenue growth beating market expectations"},
        {"business", "shares of the bank fell after the federal reserve raised interest rates again"},
        {"business", "the startup raised venture capital funding to expand its retail business"},
        {"business", "investors are watching inflation data and the stock market closed higher today"},
        {"business", "the merger deal values the firm at billions and awaits shareholder approval"},
        {"business", "oil prices climbed as the company announced dividends and profit margins improved"},
        {"business", "the chief executive outlined a strategy to cut costs and boost sales"},
        {"business", "trade tariffs hit exports while the economy added jobs and wages rose"},
        {"entertainment", "the film premiered at the festival and the actress won critical acclaim"},
        {"entertainment", "the band released a new album and announced a world concert tour"},
        {"entertainment", "the television series finale drew millions of viewers last night"},
        {"entertainment", "the singer performed her hit song at the awards show ceremony"},
        {"entertainment", "critics praised the movie director for the stunning cinematography and cast"},
        {"entertainment", "the celebrity couple appeared on the red carpet at the premiere"},
        {"entertainment", "the comedy show returns with new episodes and a surprise guest star"},
        {"entertainment", "fans streamed the trailer for the upcoming blockbuster sequel"},
        {"politics", "the senate passed the bill after a long debate over the legislation"},
        {"politics", "the president signed an executive order ahead of the election campaign"},
        {"politics", "lawmakers from both parties criticized the government policy on immigration"},
        {"politics", "the minister resigned amid a parliamentary vote of no confidence"},
        {"politics", "voters head to the polls as candidates make final campaign speeches"},
        {"politics", "the congress committee held hearings on the proposed federal budget"},
        {"politics", "diplomats negotiated a treaty while the opposition demanded reforms"},
        {"politics", "the governor vetoed the law citing constitutional concerns and court rulings"},
        {"religion", "the church congregation gathered for prayer and worship on sunday"},
        {"religion", "the priest delivered a sermon about faith scripture and forgiveness"},
        {"religion", "pilgrims traveled to the holy shrine during the sacred festival"},
        {"religion", "the bishop spoke on theology and the teachings of the gospel"},
        {"religion", "the mosque and the temple opened their doors for interfaith dialogue"},
        {"religion", "believers fasted and prayed during the holy month of devotion"},
        {"religion", "the monastery preserved ancient scripture and traditions of the monks"},
        {"religion", "the congregation sang hymns and read verses from the bible"},
        {"sports", "the team won the championship game with a late goal in overtime"},
        {"sports", "the striker scored twice as the club climbed the league table"},
        {"sports", "the coach praised the players after a hard fought tournament victory"},
        {"sports", "the quarterback threw three touchdowns in the season opener"},
        {"sports", "the tennis champion defended her title in straight sets at the open"},
        {"sports", "the runner broke the world record at the olympic stadium"},
        {"sports", "the basketball playoffs continue with the finals matchup set tonight"},
        {"sports", "the boxer retained the belt after a unanimous decision victory"},
        {"tech", "the company unveiled a new smartphone with a faster processor and camera"},
        {"tech", "researchers trained a machine learning model on large datasets in the cloud"},
        {"tech", "the software update patches security vulnerabilities in the operating system"},
        {"tech", "engineers released the open source framework for web developers"},
        {"tech", "the startup builds artificial intelligence chips for data centers"},
        {"tech", "users reported a bug after the app store rolled out the upgrade"},
        {"tech", "the browser adds encryption features to protect user privacy online"},
        {"tech", "the internet provider expanded its fiber network and wireless coverage"},
    };
    return corpus;
}

// Bundled spam/ham corpus for the spam probability features.
inline const std::vector<std::pair<std::string, std::string>>& builtin_spam_corpus() {
    static const std::vector<std::pair<std::string, std::string>> corpus = {
        {"spam", "congratulations you won a free prize click here to claim your cash reward now"},
        {"spam", "buy cheap pills online no prescription needed limited offer discount"},
        {"spam", "make money fast from home earn thousands weekly guaranteed winner"},
        {"spam", "urgent your account is suspended verify your password immediately click the link"},
        {"spam", "hot singles in your area sign up free tonight exclusive deal"},
        {"spam", "lowest mortgage rates refinance today act now free quote no obligation"},
        {"spam", "you have been selected for a free gift card claim your bonus prize"},
        {"spam", "weight loss miracle pill burns fat instantly order now free shipping"},
        {"ham", "the meeting is scheduled for tuesday afternoon in the main conference room"},
        {"ham", "please review the attached report and send your comments by friday"},
        {"ham", "the committee published the annual study on regional water quality"},
        {"ham", "our library hours change during the holiday season see the schedule"},
        {"ham", "the professor posted lecture notes and the reading list for next week"},
        {"ham", "city council approved the new park renovation budget on monday"},
        {"ham", "the museum opens a new exhibition about ancient history this month"},
        {"ham", "remember to submit the expense form before the end of the quarter"},
    };
    return corpus;
}

// "label TAB text" lines, e.g. a topics or spam training table.
inline std::vector<std::pair<std::string, std::string>> load_labeled_texts(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TableFormatError("cannot open labeled text corpus: " + path);
    std::vector<std::pair<std::string, std::string>> corpus;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw TableFormatError("labeled corpus line " + std::to_string(lineno) +
                                   ": expected 'label TAB text'");
        corpus.emplace_back(text::to_lower(text::trim(line.substr(0, tab))), line.substr(tab + 1));
    }
    return corpus;
}

// One binary multinomial NB per topic (topic vs rest), fixed category order.
class CategoryModelSet {
public:
    static CategoryModelSet train(const std::vector<std::pair<std::string, std::string>>& corpus,
                                  double alpha = 1.0) {
        CategoryModelSet set;
        for (std::size_t c = 0; c < topic_categories().size(); ++c) {
            const std::string& topic = topic_categories()[c];
            std::vector<std::string> docs;
            std::vector<int> labels;
            for (const auto& [label, doc] : corpus) {
                docs.push_back(doc);
                labels.push_back(label == topic ? 1 : 0);
            }
            set.models_[c].fit(docs, labels, alpha);
        }
        return set;
    }

    static CategoryModelSet train_builtin(double alpha = 1.0) {
        return train(builtin_topic_corpus(), alpha);
    }

    // Per-category probabilities for one text, 0.5 each when there is no
    // usable evidence.
    std::array<double, 6> probabilities(const std::string& doc) const {
        std::array<double, 6> probs{};
        for (std::size_t c = 0; c < models_.size(); ++c)
            probs[c] = models_[c].positive_probability(doc);
        return probs;
    }

    static const std::array<std::string, 6>& categories() { return topic_categories(); }

private:
    std::array<learn::BinaryTextModel, 6> models_;
};

// Binary spam text model (spam = positive class).
class SpamModel {
public:
    static SpamModel train(const std::vector<std::pair<std::string, std::string>>& corpus,
                           double alpha = 1.0) {
        SpamModel m;
        std::vector<std::string> docs;
        std::vector<int> labels;
        for (const auto& [label, doc] : corpus) {
            docs.push_back(doc);
            labels.push_back(label == "spam" ? 1 : 0);
        }
        m.model_.fit(docs, labels, alpha);
        return m;
    }

    static SpamModel train_builtin(double alpha = 1.0) { return train(builtin_spam_corpus(), alpha); }

    double spam_probability(const std::string& doc) const {
        return model_.positive_probability(doc);
    }

private:
    learn::BinaryTextModel model_;
};

} // namespace webcred::feat
