//! Finding and enumerating front-door adjustment sets in causal diagrams.
//!
//! A causal diagram is an [`Admg`]: directed edges for direct effects,
//! bidirected edges for latent confounding. [`find_fd_set`] returns one set
//! `Z` with `I ⊆ Z ⊆ R` satisfying the front-door criterion relative to
//! `(X, Y)` in polynomial time, and [`list_fd_sets`] streams all of them
//! with polynomial delay. [`estimand::fd_estimand`] renders the matching
//! adjustment formula.
//!
//! ```
//! use frontdoor::{fixtures, find_fd_set, VarSet};
//!
//! let g = fixtures::canon();
//! let (x, y) = (fixtures::set(&g, "X"), fixtures::set(&g, "Y"));
//! let z = find_fd_set(&g, &x, &y, &VarSet::new(), &fixtures::set(&g, "Z")).unwrap();
//! assert_eq!(z, Some(fixtures::set(&g, "Z")));
//! ```

pub mod admg;
pub mod cli;
pub mod error;
pub mod estimand;
pub mod find;
pub mod fixtures;
pub mod format;
pub mod list;
pub mod moral;
pub mod oracle;
pub mod separation;
pub mod varset;

pub use admg::{Admg, AdmgBuilder, EdgeKind};
pub use error::{FdError, GraphError, OracleError, ParseError, SepError};
pub use find::{check_fd, find_fd_set, FdQuery, FdReport};
pub use format::{parse_graph, render_graph};
pub use list::{list_fd_sets, FdSetLister};
pub use moral::{moralize, MoralGraph};
pub use separation::{causal_path_graph, pcp, test_sep};
pub use varset::{NodeId, VarSet};
