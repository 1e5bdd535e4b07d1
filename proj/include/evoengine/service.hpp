#pragma once

/// @file service.hpp
/// @brief HTTP facade over the engine: validation, classification, presets,
/// and asynchronous runs with server-sent progress events.
///
///   POST   /api/validate          EngineConfig           -> ValidationReport (+ resolved sizes)
///   POST   /api/classify          EngineConfig           -> {"paradigm": token}
///   POST   /api/preset            {paradigm, params}     -> EngineConfig
///   POST   /api/runs              Experiment             -> {"runId"}
///   GET    /api/runs/{id}         snapshot of the run record
///   GET    /api/runs/{id}/events  text/event-stream, one "generation" event per
///                                 generation, then one "end" event
///   DELETE /api/runs/{id}         cancel (if running) and forget
///
/// Errors are JSON bodies {"error": CODE, "message": ...}: 400 for malformed
/// input, 404 for unknown runs, 422 for well-formed but infeasible requests.

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

#include <evoengine/experiment.hpp>
#include <evoengine/presets.hpp>
#include <evoengine/serialization.hpp>

namespace evoengine {

struct ServiceOptions {
    std::string host = "127.0.0.1";
    int port = 8571;
    std::string cors_origin = "*";
    std::string static_dir; ///< served at "/" when set (the panel's built assets)
    std::size_t worker_threads = 32;
};

/// Random (version 4) UUID.
inline std::string make_run_id() {
    static std::mutex mutex;
    static std::mt19937_64 gen{std::random_device{}()};
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    {
        std::lock_guard lock(mutex);
        hi = gen();
        lo = gen();
    }
    hi = (hi & ~0xF000ULL) | 0x4000ULL;
    lo = (lo & ~(0xC000ULL << 48)) | (0x8000ULL << 48);
    char buf[37];
    std::snprintf(buf, sizeof buf, "%08x-%04x-%04x-%04x-%012llx", static_cast<unsigned>(hi >> 32),
                  static_cast<unsigned>((hi >> 16) & 0xFFFF), static_cast<unsigned>(hi & 0xFFFF),
                  static_cast<unsigned>(lo >> 48), static_cast<unsigned long long>(lo & 0xFFFFFFFFFFFFULL));
    return buf;
}

/// One asynchronous run. The worker thread is declared last so that it is
/// joined before the rest of the state goes away.
class RunState {
public:
    RunState(std::string id, Experiment experiment) : id_(std::move(id)), experiment_(std::move(experiment)) {
        worker_ = std::jthread([this](std::stop_token stop) { execute(stop); });
    }

    RunState(const RunState&) = delete;
    RunState& operator=(const RunState&) = delete;

    [[nodiscard]] const std::string& id() const noexcept { return id_; }

    void cancel() { worker_.request_stop(); }

    struct Snapshot {
        std::vector<GenerationStats> events; ///< history from the requested offset on
        bool finished = false;
        std::optional<StopReason> stop_reason;
        std::string error;
        Json record;
    };

    /// Waits up to `timeout` for history beyond `offset` or for completion.
    [[nodiscard]] Snapshot wait_from(std::size_t offset, std::chrono::milliseconds timeout) {
        std::unique_lock lock(mutex_);
        changed_.wait_for(lock, timeout, [&] { return history_.size() > offset || finished_; });
        return snapshot_locked(offset);
    }

    [[nodiscard]] Snapshot snapshot() {
        std::lock_guard lock(mutex_);
        return snapshot_locked(0);
    }

    [[nodiscard]] Json to_json_snapshot() {
        const Snapshot s = snapshot();
        Json history = Json::array();
        for (const auto& g : s.events) {
            history.push_back(to_json(g));
        }
        Json j;
        j["runId"] = id_;
        j["status"] = !s.finished ? "running" : (s.error.empty() ? "finished" : "failed");
        j["config"] = to_json(experiment_.engine);
        j["runConfig"] = to_json(experiment_.run);
        j["problem"] = to_json(experiment_.problem);
        j["history"] = std::move(history);
        if (s.stop_reason) {
            j["stopReason"] = to_token(*s.stop_reason);
            j["bestIndividual"] = s.record["bestIndividual"];
        }
        if (!s.error.empty()) {
            j["error"] = s.error;
        }
        return j;
    }

private:
    Snapshot snapshot_locked(std::size_t offset) const {
        Snapshot s;
        if (offset < history_.size()) {
            s.events.assign(history_.begin() + static_cast<std::ptrdiff_t>(offset), history_.end());
        }
        s.finished = finished_;
        s.stop_reason = stop_reason_;
        s.error = error_;
        s.record = record_;
        return s;
    }

    void execute(std::stop_token stop) {
        std::optional<StopReason> reason;
        std::string error;
        Json record;
        try {
            ExperimentResult result = run_experiment(
                experiment_,
                [this](const GenerationStats& s) {
                    {
                        std::lock_guard lock(mutex_);
                        history_.push_back(s);
                    }
                    changed_.notify_all();
                },
                stop);
            reason = result.stop_reason;
            record = std::move(result.record);
        } catch (const Error& e) {
            error = e.code();
        } catch (const std::exception& e) {
            error = e.what();
        }
        {
            std::lock_guard lock(mutex_);
            finished_ = true;
            stop_reason_ = reason;
            error_ = std::move(error);
            record_ = std::move(record);
        }
        changed_.notify_all();
    }

    std::string id_;
    Experiment experiment_;
    mutable std::mutex mutex_;
    std::condition_variable changed_;
    std::vector<GenerationStats> history_;
    bool finished_ = false;
    std::optional<StopReason> stop_reason_;
    std::string error_;
    Json record_;
    std::jthread worker_;
};

class RunRegistry {
public:
    std::string start(Experiment experiment) {
        std::string id = make_run_id();
        auto state = std::make_shared<RunState>(id, std::move(experiment));
        std::lock_guard lock(mutex_);
        runs_.emplace(id, std::move(state));
        return id;
    }

    [[nodiscard]] std::shared_ptr<RunState> find(const std::string& id) const {
        std::lock_guard lock(mutex_);
        const auto it = runs_.find(id);
        return it == runs_.end() ? nullptr : it->second;
    }

    bool remove(const std::string& id) {
        std::shared_ptr<RunState> victim;
        {
            std::lock_guard lock(mutex_);
            const auto it = runs_.find(id);
            if (it == runs_.end()) {
                return false;
            }
            victim = std::move(it->second);
            runs_.erase(it);
        }
        victim->cancel();
        return true;
    }

    void cancel_all() {
        std::lock_guard lock(mutex_);
        for (auto& [id, state] : runs_) {
            state->cancel();
        }
    }

    [[nodiscard]] std::size_t size() const {
        std::lock_guard lock(mutex_);
        return runs_.size();
    }

private:
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<RunState>> runs_;
};

class Service {
public:
    explicit Service(ServiceOptions options = {}) : options_(std::move(options)) { install_routes(); }

    ~Service() {
        stop();
        registry_.cancel_all();
    }

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Blocks serving on the configured host and port.
    bool listen() { return server_.listen(options_.host, options_.port); }

    /// Binds to an ephemeral port and returns it; follow with listen_after_bind().
    int bind_to_any_port() { return server_.bind_to_any_port(options_.host); }
    bool listen_after_bind() { return server_.listen_after_bind(); }

    void stop() {
        stopping_ = true;
        registry_.cancel_all();
        server_.stop();
    }

    void wait_until_ready() const { server_.wait_until_ready(); }

    [[nodiscard]] RunRegistry& registry() noexcept { return registry_; }
    [[nodiscard]] const ServiceOptions& options() const noexcept { return options_; }

private:
    static void send_json(httplib::Response& res, const Json& body, int status = 200) {
        res.status = status;
        res.set_content(body.dump(), "application/json");
    }

    static void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
        send_json(res, {{"error", code}, {"message", message}}, status);
    }

    static int status_for(const Error& e) {
        if (e.code() == errc::infeasible_config || e.code() == errc::infeasible_preset ||
            e.code() == errc::not_a_preset) {
            return 422;
        }
        return 400;
    }

    /// Runs `handler`, mapping library errors onto JSON error responses.
    template <typename F>
    static void guarded(httplib::Response& res, F&& handler) {
        try {
            handler();
        } catch (const Error& e) {
            send_error(res, status_for(e), e.code(), e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, "INTERNAL", e.what());
        }
    }

    void install_routes() {
        const std::size_t threads = options_.worker_threads;
        server_.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };

        const std::string origin = options_.cors_origin;
        server_.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
            if (!origin.empty()) {
                res.set_header("Access-Control-Allow-Origin", origin);
            }
        });
        server_.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
            res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
            res.status = 204;
        });

        server_.Post("/api/validate", [](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                const EngineConfig config = engine_config_from_json(parse_json_text(req.body));
                Json body = to_json(validate(config));
                body["sizes"] = to_json(resolve_sizes(config));
                send_json(res, body);
            });
        });

        server_.Post("/api/classify", [](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                const EngineConfig config = engine_config_from_json(parse_json_text(req.body));
                const std::string paradigm(to_token(classify(config)));
                send_json(res, {{"paradigm", paradigm}});
            });
        });

        server_.Post("/api/preset", [](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                const Json body = parse_json_text(req.body);
                json_detail::expect_object(body, "", {"paradigm", "params", "sense"});
                const Paradigm paradigm = paradigm_from_json(json_detail::field(body, "paradigm", ""), "paradigm");
                const PresetParams params =
                    preset_params_from_json(json_detail::field(body, "params", ""), "params");
                const ObjectiveSense sense =
                    body.contains("sense") ? sense_from_json(body["sense"], "sense") : ObjectiveSense::maximize;
                send_json(res, to_json(apply_preset(paradigm, params, sense)));
            });
        });

        server_.Post("/api/runs", [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
                Experiment experiment = experiment_from_json(parse_json_text(req.body));
                const ValidationReport report = validate(experiment.engine);
                if (!report.feasible()) {
                    Json body = {{"error", errc::infeasible_config}, {"message", "engine config is infeasible"}};
                    body["violations"] = to_json(report)["violations"];
                    send_json(res, body, 422);
                    return;
                }
                const std::string id = registry_.start(std::move(experiment));
                res.set_header("Location", "/api/runs/" + id);
                send_json(res, {{"runId", id}}, 201);
            });
        });

        server_.Get(R"(/api/runs/([0-9a-f\-]+))", [this](const httplib::Request& req, httplib::Response& res) {
            const auto state = registry_.find(req.matches[1]);
            if (!state) {
                send_error(res, 404, "UNKNOWN_RUN", "no run with id " + std::string(req.matches[1]));
                return;
            }
            send_json(res, state->to_json_snapshot());
        });

        server_.Delete(R"(/api/runs/([0-9a-f\-]+))", [this](const httplib::Request& req, httplib::Response& res) {
            if (!registry_.remove(req.matches[1])) {
                send_error(res, 404, "UNKNOWN_RUN", "no run with id " + std::string(req.matches[1]));
                return;
            }
            res.status = 204;
        });

        server_.Get(R"(/api/runs/([0-9a-f\-]+)/events)", [this](const httplib::Request& req,
                                                                 httplib::Response& res) {
            auto state = registry_.find(req.matches[1]);
            if (!state) {
                send_error(res, 404, "UNKNOWN_RUN", "no run with id " + std::string(req.matches[1]));
                return;
            }
            res.set_header("Cache-Control", "no-cache");
            res.set_chunked_content_provider(
                "text/event-stream",
                [this, state, sent = std::size_t{0}](std::size_t, httplib::DataSink& sink) mutable {
                    const RunState::Snapshot snap = state->wait_from(sent, std::chrono::milliseconds(200));
                    std::string chunk;
                    for (const auto& s : snap.events) {
                        chunk += "event: generation\ndata: " + to_json(s).dump() + "\n\n";
                    }
                    sent += snap.events.size();
                    if (!chunk.empty() && !sink.write(chunk.data(), chunk.size())) {
                        return false;
                    }
                    if (snap.finished) {
                        Json end = {{"status", snap.error.empty() ? "finished" : "failed"}};
                        if (snap.stop_reason) {
                            end["stopReason"] = to_token(*snap.stop_reason);
                        }
                        if (!snap.error.empty()) {
                            end["error"] = snap.error;
                        }
                        const std::string last = "event: end\ndata: " + end.dump() + "\n\n";
                        sink.write(last.data(), last.size());
                        sink.done();
                        return true;
                    }
                    return !stopping_.load() && sink.is_writable();
                });
        });

        if (!options_.static_dir.empty()) {
            server_.set_mount_point("/", options_.static_dir);
        }
    }

    ServiceOptions options_;
    httplib::Server server_;
    RunRegistry registry_;
    std::atomic<bool> stopping_{false};
};

} // namespace evoengine
