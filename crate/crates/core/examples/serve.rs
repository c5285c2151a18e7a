//! Runs the JSON endpoints on 127.0.0.1.
//!
//! ```bash
//! cargo run --example serve
//! curl 'http://127.0.0.1:8642/api/envelope?a=3&b=4&r=2.5'
//! ```

#[tokio::main]
async fn main() -> std::io::Result<()> {
    envlab::service::serve(envlab::service::resolve_port(None)).await
}
