#include <csignal>
#include <iostream>
#include <memory>

#include <pairwise/cli.hpp>
#include <pairwise/service.hpp>

namespace {

httplib::Server* g_server = nullptr;

void stop_server(int) {
  if (g_server) g_server->stop();
}

int serve(const std::string& host, int port, const std::string& log_path) {
  std::unique_ptr<pairwise::SessionStore> store =
      log_path.empty() ? std::make_unique<pairwise::SessionStore>()
                       : std::make_unique<pairwise::SessionStore>(std::filesystem::path(log_path));
  httplib::Server server;
  pairwise::mount_routes(server, *store);
  g_server = &server;
  std::signal(SIGINT, stop_server);
  std::signal(SIGTERM, stop_server);
  std::cerr << "listening on " << host << ":" << port << " (" << store->size() << " sessions restored)\n";
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  return pairwise::cli::run(argc, argv, std::cout, std::cerr, serve);
}
