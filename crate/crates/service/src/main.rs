use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use coarray_core::Catalog;
use coarray_service::{app, AppState, ServeOptions};

/// Serve the coarray JSON API and, optionally, the web UI.
#[derive(Debug, Parser)]
#[command(name = "coarray-serve", version)]
struct Args {
    /// Address to listen on.
    #[arg(long, env = "COARRAY_BIND", default_value = "127.0.0.1:8080")]
    bind: SocketAddr,
    /// Directory of static UI assets served under "/".
    #[arg(long, env = "COARRAY_STATIC_DIR", value_name = "DIR")]
    static_dir: Option<PathBuf>,
    /// Allow cross-origin API calls from this origin ("*" for any).
    #[arg(long, env = "COARRAY_CORS_ORIGIN", value_name = "ORIGIN")]
    cors_origin: Option<String>,
    /// Catalog file to use instead of the built-in one.
    #[arg(long, env = "COARRAY_CATALOG_FILE", value_name = "PATH")]
    catalog_file: Option<PathBuf>,
}

#[tokio::main]
async fn main() -> ExitCode {
    let args = Args::parse();
    let catalog = match &args.catalog_file {
        Some(path) => match Catalog::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: catalog: {e}");
                return ExitCode::from(2);
            }
        },
        None => Catalog::builtin(),
    };
    let opts = ServeOptions {
        static_dir: args.static_dir,
        cors_origin: args.cors_origin,
    };
    let router = app(AppState::new(catalog), &opts);

    let listener = match tokio::net::TcpListener::bind(args.bind).await {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: binding {}: {e}", args.bind);
            return ExitCode::from(2);
        }
    };
    eprintln!("listening on http://{}", args.bind);
    let shutdown = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    if let Err(e) = axum::serve(listener, router).with_graceful_shutdown(shutdown).await {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
