#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use vectont::schema::{Dimension, DomainSchema};

/// Scratch directory populated with schemas and datasets for the CLI.
pub struct Fixture {
    dir: tempfile::TempDir,
}

pub const SPHERE: &str = "class sphere(a,b,c,r): (x+a)^2+(y+b)^2+(z+c)^2 <= r^2";
pub const WEIGHT: &str = "class w(lo,hi,val): (time >= lo) AND (time <= hi) AND (weight = val)";
pub const INNER_BOX: &str = r#"{"dims":["x","y"],"generators":[[1,1],[2,1],[1,2],[2,2]]}"#;
pub const OUTER_BOX: &str = r#"{"dims":["x","y"],"generators":[[0,0],[4,0],[0,4],[4,4]]}"#;

impl Fixture {
    pub fn new() -> Self {
        let f = Fixture {
            dir: tempfile::tempdir().expect("temp dir"),
        };
        let cont = |name: &str, dims: &[&str]| DomainSchema::continuous(name, dims).unwrap();
        f.schema("shelves.json", &cont("shelves", &["height", "width"]));
        f.schema("humans.json", &cont("humans", &["time", "weight"]));
        f.schema("xy.json", &cont("plane", &["x", "y"]));
        f.schema("xyz.json", &cont("space", &["x", "y", "z"]));
        f.schema("rgb.json", &cont("rgb", &["r", "g", "b"]));
        f.schema(
            "motion.json",
            &cont(
                "motion",
                &[
                    "size",
                    "gravitational_force",
                    "electric_force",
                    "ellipticity",
                    "period",
                ],
            ),
        );
        let shapes = DomainSchema::define(
            "colored_shapes",
            vec![
                Dimension::integer("edges").with_bounds(0.0, 1000.0),
                Dimension::integer("red").with_bounds(0.0, 255.0),
                Dimension::integer("green").with_bounds(0.0, 255.0),
                Dimension::integer("blue").with_bounds(0.0, 255.0),
            ],
        )
        .unwrap();
        f.schema("shapes.json", &shapes);

        f.write("shapes_empty.csv", "edges,red,green,blue\n");
        f.write("shapes.csv", "edges,red,green,blue\n4,0,0,255\n");
        let john: String = (50..=60).map(|t| format!("{t},68\n")).collect();
        f.write("john.csv", &format!("time,weight\n{john}"));
        let split: String = (0..=10)
            .chain(50..=60)
            .map(|t| format!("{t},1\n"))
            .collect();
        f.write("split.csv", &format!("time,weight\n{split}"));
        f.write("rgb.csv", "r,g,b,@source\n1,0,0,r\n0,1,0,g\n1,1,0,yellow\n");
        f.write("corner.csv", "x,y\n0,0\n3,0\n0,3\n1,1\n");
        f.write("triangle.csv", "x,y\n0,0\n3,0\n0,3\n");
        let grid: String = (0..4)
            .flat_map(|i| (0..4).map(move |j| format!("{i},{j}\n")))
            .collect();
        f.write("grid.csv", &format!("x,y\n{grid}"));
        f.write("toy.csv", "x,y\n0,0\n2,0\n0,2\n-2,0\n5,5\n");
        f.write(
            "planets.json",
            r#"{"size":1,"gravitational_force":1,"electric_force":0,"ellipticity":0.3,"period":5}"#,
        );
        f
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    pub fn p(&self, name: &str) -> String {
        self.path(name).display().to_string()
    }

    pub fn root(&self) -> &Path {
        self.dir.path()
    }

    fn write(&self, name: &str, body: &str) {
        fs::write(self.path(name), body).expect("write fixture");
    }

    fn schema(&self, name: &str, s: &DomainSchema) {
        self.write(name, &s.to_json());
    }

    /// `vectont` argument lists exercising every subcommand behind the
    /// worked examples, each paired with a short label.
    pub fn invocations(&self) -> Vec<(&'static str, Vec<String>)> {
        let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let with = |schema: &str, data: Option<&str>, rest: &[&str]| {
            let mut a = v(&["--json", "--schema"]);
            a.push(self.p(schema));
            if let Some(d) = data {
                a.push("--data".into());
                a.push(self.p(d));
            }
            a.extend(v(rest));
            a
        };
        let out = |name: &str| self.p(name);
        vec![
            (
                "schema show",
                with("shelves.json", None, &["schema", "show"]),
            ),
            (
                "schema new",
                v(&[
                    "--json",
                    "schema",
                    "new",
                    "--name",
                    "shelves",
                    "--dim",
                    "height:continuous",
                    "--dim",
                    "width:continuous",
                ]),
            ),
            (
                "possible",
                with("shelves.json", None, &["possible", "--vector", "180,80.5"]),
            ),
            (
                "data load",
                with("shapes.json", Some("shapes.csv"), &["data", "load"]),
            ),
            ("data insert", {
                let mut a = with(
                    "shapes.json",
                    Some("shapes_empty.csv"),
                    &["data", "insert", "--vector", "4,0,0,255", "--out"],
                );
                a.push(out("inserted.csv"));
                a
            }),
            (
                "exists",
                with(
                    "shapes.json",
                    Some("shapes.csv"),
                    &["exists", "--vector", "4,0,0,255"],
                ),
            ),
            (
                "exists perturbed",
                with(
                    "shapes.json",
                    Some("shapes.csv"),
                    &["exists", "--vector", "4,0,1,255"],
                ),
            ),
            (
                "foe fit-const",
                with(
                    "humans.json",
                    Some("john.csv"),
                    &["foe", "fit-const", "--value", "weight", "--axis", "time"],
                ),
            ),
            (
                "foe bind",
                with(
                    "humans.json",
                    None,
                    &["foe", "bind", "--class", WEIGHT, "--bind", "w(50, 60, 68)"],
                ),
            ),
            (
                "foe extension",
                with(
                    "humans.json",
                    Some("john.csv"),
                    &[
                        "foe",
                        "extension",
                        "--class",
                        WEIGHT,
                        "--bind",
                        "w(50, 60, 68)",
                    ],
                ),
            ),
            (
                "foe eval",
                with(
                    "humans.json",
                    None,
                    &[
                        "foe",
                        "eval",
                        "--class",
                        WEIGHT,
                        "--bind",
                        "w(50, 60, 68)",
                        "--vector",
                        "55,68",
                    ],
                ),
            ),
            (
                "foe classify endurant",
                with(
                    "humans.json",
                    Some("john.csv"),
                    &[
                        "foe",
                        "classify",
                        "--class",
                        WEIGHT,
                        "--bind",
                        "w(50, 60, 68)",
                        "--axis",
                        "time",
                    ],
                ),
            ),
            (
                "foe classify perdurant",
                with(
                    "humans.json",
                    Some("split.csv"),
                    &[
                        "foe",
                        "classify",
                        "--class",
                        "class all(): 0 <= 1",
                        "--bind",
                        "all()",
                        "--axis",
                        "time",
                    ],
                ),
            ),
            (
                "foe parse",
                with("xyz.json", None, &["foe", "parse", "--class", SPHERE]),
            ),
            (
                "region new",
                with(
                    "xy.json",
                    Some("triangle.csv"),
                    &["region", "new", "--dims", "x,y"],
                ),
            ),
            (
                "region contains",
                with(
                    "xy.json",
                    None,
                    &[
                        "region", "contains", "--region", OUTER_BOX, "--vector", "1,3",
                    ],
                ),
            ),
            (
                "region part-of",
                with(
                    "xy.json",
                    None,
                    &[
                        "region", "part-of", "--part", INNER_BOX, "--whole", OUTER_BOX,
                    ],
                ),
            ),
            (
                "region part-of reversed",
                with(
                    "xy.json",
                    None,
                    &[
                        "region", "part-of", "--part", OUTER_BOX, "--whole", INNER_BOX,
                    ],
                ),
            ),
            (
                "region overlap",
                with(
                    "xy.json",
                    None,
                    &["region", "overlap", "--a", INNER_BOX, "--b", OUTER_BOX],
                ),
            ),
            (
                "region centrality",
                with(
                    "xy.json",
                    None,
                    &[
                        "region",
                        "centrality",
                        "--part",
                        INNER_BOX,
                        "--whole",
                        OUTER_BOX,
                    ],
                ),
            ),
            ("region convex-in", {
                let mut a = with(
                    "xy.json",
                    Some("corner.csv"),
                    &["region", "convex-in", "--dims", "x,y", "--subset"],
                );
                a.push(self.p("triangle.csv"));
                a
            }),
            ("depend rank", {
                let mut a = with("rgb.json", None, &["depend", "rank", "--vectors"]);
                a.push(self.p("rgb.csv"));
                a
            }),
            ("depend express", {
                let mut a = with(
                    "rgb.json",
                    None,
                    &["depend", "express", "--target", "yellow", "--vectors"],
                );
                a.push(self.p("rgb.csv"));
                a
            }),
            (
                "recon path",
                with(
                    "motion.json",
                    None,
                    &[
                        "recon",
                        "path",
                        "--from",
                        "1,1,0,0.3,5",
                        "--to",
                        "0.001,0,1,0.3,5",
                    ],
                ),
            ),
            ("recon dist", {
                let mut a = with(
                    "motion.json",
                    None,
                    &["recon", "dist", "--to", "0.001,0,1,0.3,5", "--from"],
                );
                a.push(self.p("planets.json"));
                a
            }),
            (
                "dist r=2",
                with("xy.json", None, &["dist", "--a", "0,0", "--b", "3,4"]),
            ),
            (
                "dist r=1",
                with(
                    "xy.json",
                    None,
                    &["--r", "1", "dist", "--a", "0,0", "--b", "3,4"],
                ),
            ),
            (
                "dist r=inf",
                with(
                    "xy.json",
                    None,
                    &["--r", "inf", "dist", "--a", "0,0", "--b", "3,4"],
                ),
            ),
            (
                "navigate",
                with(
                    "xy.json",
                    Some("toy.csv"),
                    &[
                        "navigate", "--from", "0,0", "--move", "x=+1", "--move", "y=+1",
                    ],
                ),
            ),
            (
                "nearest",
                with(
                    "xy.json",
                    Some("toy.csv"),
                    &["nearest", "--vector", "1,1", "--k", "3"],
                ),
            ),
            ("prob fit", {
                let mut a = with(
                    "xy.json",
                    Some("grid.csv"),
                    &["prob", "fit", "--bins", "4", "--out"],
                );
                a.push(out("model.json"));
                a
            }),
            ("prob query", {
                let mut a = with(
                    "xy.json",
                    None,
                    &["prob", "query", "--vector", "1,2", "--model"],
                );
                a.push(out("model.json"));
                a
            }),
        ]
    }
}

pub fn run(args: &[String]) -> vectont_cli::CommandResult {
    let mut argv = vec!["vectont".to_string()];
    argv.extend(args.iter().cloned());
    vectont_cli::run(argv)
}
