// SPDX-License-Identifier: Apache-2.0

//! Shared thread pool. `RMSP_THREADS` caps the number of worker threads.

use std::sync::OnceLock;

use rayon::{ThreadPool, ThreadPoolBuilder};

pub const THREADS_ENV: &str = "RMSP_THREADS";

pub fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = ThreadPoolBuilder::new();
        if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
            builder = builder.num_threads(n.max(1));
        }
        builder.build().expect("thread pool")
    })
}
