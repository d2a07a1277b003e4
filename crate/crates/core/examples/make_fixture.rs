//! Regenerates `tests/fixtures/campaign/`.
//!
//! Completed applicants answer the questions generated for their claims
//! under `SEED`, one answer per claim in résumé order.
//!
//!     cargo run -p claimgate-core --example make_fixture

use std::fs;
use std::path::Path;

use claimgate_core::corpus::to_jsonl;
use claimgate_core::{
    ApplicationRecord, ClaimExtractor, Gazetteer, JobDomain, JobSpec, ResponseRecord, TemplatePack,
};
use claimgate_core::qgen::{generate_questions, DEFAULT_QUESTION_CAP};

const SEED: u64 = 4242;

fn job(id: &str, title: &str, domain: JobDomain, skills: &[&str], description: &str) -> JobSpec {
    JobSpec {
        job_id: id.into(),
        title: title.into(),
        domain,
        required_skills: skills.iter().map(|s| s.to_string()).collect(),
        description: description.into(),
    }
}

fn jobs() -> Vec<JobSpec> {
    vec![
        job(
            "sw-1",
            "Backend Engineer",
            JobDomain::Software,
            &["rust", "kubernetes", "postgresql"],
            "Own the order and pricing services.",
        ),
        job(
            "mk-1",
            "Growth Marketer",
            JobDomain::Marketing,
            &["seo", "google analytics", "content strategy"],
            "Grow organic acquisition for the storefront.",
        ),
        job(
            "hw-1",
            "FPGA Engineer",
            JobDomain::Hardware,
            &["verilog", "fpga", "pcb design"],
            "Bring up the next sensor board.",
        ),
        job(
            "sl-1",
            "Account Executive",
            JobDomain::DomesticSales,
            &["salesforce", "negotiation", "lead generation"],
            "Mid-market accounts in the northern region.",
        ),
        job(
            "ds-1",
            "Product Designer",
            JobDomain::CreativeDesign,
            &["figma", "user research", "prototyping"],
            "Checkout and onboarding flows.",
        ),
    ]
}

struct Completed {
    id: &'static str,
    job: &'static str,
    resume: &'static str,
    answers: &'static [&'static str],
}

const COMPLETED: &[Completed] = &[
    Completed {
        id: "a01",
        job: "sw-1",
        resume: "• Cut checkout latency 40% by rewriting the pricing service in Rust on Kubernetes\n\
                 • Migrated 12 TB of order data from MySQL to PostgreSQL with Kafka change streams\n\
                 • Reduced cloud spend by $120K per year with Terraform and AWS autoscaling\n\
                 • Led 6 engineers building Rust services with PostgreSQL",
        answers: &[
            "The 40% was p99 latency at checkout, measured over two weeks before and after. The old pricing code was Python with a lot of per-request allocation. Moving it to Rust and running it as its own deployment on Kubernetes let us pin CPU and drop the cold starts.",
            "It was 12 TB once you counted the audit tables. We ran MySQL and PostgreSQL side by side for a month. Kafka carried the change stream, and a nightly diff job compared row counts and checksums until they matched for seven days straight.",
            "About $120K a year, mostly from idle capacity. I moved the fleet definitions into Terraform first, which was dull work. Then we set AWS autoscaling on queue depth instead of CPU, and the night shift instances simply went away.",
            "Six engineers, two of them new grads. We wrote every service in Rust and kept one PostgreSQL schema per service. I did code review daily and tried hard not to become the bottleneck, which I managed about half the time.",
        ],
    },
    Completed {
        id: "a02",
        job: "sw-1",
        resume: "• Built a Rust ingestion service handling 30K events per second\n\
                 • Ran Kubernetes clusters for 3 product teams with Terraform\n\
                 • Mentored interns on testing and code review",
        answers: &[
            "Peak was around 30K events per second during sales. The Rust service batched writes and applied backpressure when the downstream queue filled, so we stopped dropping events during spikes.",
            "Three teams shared the Kubernetes clusters. Everything was declared in Terraform and each team had its own namespace, quotas, and on-call rotation for their workloads.",
            "Mostly pairing. I asked them to write the test before touching any code and we reviewed each other's pull requests every afternoon.",
        ],
    },
    Completed {
        id: "a03",
        job: "mk-1",
        resume: "• Grew organic traffic 85% in a year through SEO and a new content strategy\n\
                 • Built Google Analytics dashboards tracking 14 funnel steps for SEO landing pages\n\
                 • Raised newsletter signups 3x with content strategy tests and Google Analytics goals",
        answers: &[
            "Organic sessions went up 85% year over year. The SEO work was unglamorous: fixing canonical tags, merging thin pages, and rewriting titles. The content strategy was the bigger lever, we picked forty questions customers actually asked and answered each one properly.",
            "There were 14 funnel steps from landing to paid order. I set up Google Analytics events for each, then grouped the SEO landing pages by intent so we could see which ones brought buyers rather than browsers.",
            "Signups grew 3x over two quarters. Every month we tested one content strategy idea against the control, and Google Analytics goals told us within a week whether it was worth keeping.",
        ],
    },
    Completed {
        id: "a04",
        job: "mk-1",
        resume: "• Increased organic traffic 60% using SEO and content strategy\n\
                 • Managed Google Analytics reporting for 9 campaigns with SEO focus\n\
                 • Improved conversion 25% through content strategy and Google Analytics insights",
        answers: &[
            "I leveraged SEO and content strategy to deliver 60% growth and drive measurable value for the organization through best practices and cross functional collaboration.",
            "I leveraged Google Analytics and SEO to deliver 9 campaigns and drive measurable value for the organization through best practices and cross functional collaboration.",
            "I leveraged content strategy and Google Analytics to deliver 25% growth and drive measurable value for the organization through best practices and cross functional collaboration.",
        ],
    },
    Completed {
        id: "a05",
        job: "sw-1",
        resume: "• Worked on backend systems using Java and Docker\n\
                 • Improved performance of APIs by 20%\n\
                 • Participated in agile ceremonies",
        answers: &["Yes I did that.", "It was faster after.", "We had standups."],
    },
    Completed {
        id: "a06",
        job: "hw-1",
        resume: "• Designed a 6-layer PCB for a motor controller and brought it up in 3 weeks\n\
                 • Wrote Verilog for an FPGA image pipeline running at 120 fps\n\
                 • Cut board rework 50% with design reviews and Verilog simulation",
        answers: &[
            "Six layers, with a solid ground plane under the gate drivers. Bring-up took three weeks because one footprint was mirrored and we had to bodge it. The PCB design review checklist we wrote afterwards caught that kind of thing.",
            "The pipeline held 120 fps at full resolution. The Verilog was mostly line buffers and a debayer stage, and the FPGA timing closed only after I pipelined the multiplier chain.",
            "Rework fell by half, 50% over the following year. Most of it came from running Verilog simulation against recorded sensor data before ordering boards.",
        ],
    },
    Completed {
        id: "a07",
        job: "hw-1",
        resume: "• Assisted senior engineers with FPGA testing\n\
                 • Soldered and inspected prototype boards\n\
                 • BSc in Electrical Engineering",
        answers: &[
            "I ran the FPGA test scripts in the lab and logged the results for the team.",
            "Mostly through-hole parts, some fine pitch under the microscope.",
            "Graduated in 2021 with a BSc, final project was a small radio receiver.",
        ],
    },
    Completed {
        id: "a08",
        job: "sl-1",
        resume: "• Closed $1.2M in new business in 2023 using Salesforce for pipeline management\n\
                 • Booked 45 meetings per month through cold calling\n\
                 • Renewed 90% of assigned accounts",
        answers: &[
            "The $1.2M came from eleven deals, two of them large. I kept every opportunity in Salesforce with a next step and a date, and I reviewed the whole pipeline each Friday.",
            "Forty-five was the monthly average over the year. Cold calling worked best before nine in the morning when owners picked up their own phones.",
            "About ninety percent renewed. The ones we lost mostly went out of business.",
        ],
    },
    Completed {
        id: "a09",
        job: "ds-1",
        resume: "• Redesigned onboarding in Figma and cut drop-off 30%\n\
                 • Ran user research with 20 shop owners\n\
                 • Built design systems for 2 product lines",
        answers: &[
            "Drop-off at step two fell 30% after we removed the tax form and asked for it later. I mocked every variant in Figma and tested them with real accounts.",
            "Twenty owners over three weeks, half in person. The user research changed the order of the whole flow.",
            "Two product lines shared one component library in the end.",
        ],
    },
    Completed {
        id: "a10",
        job: "sw-1",
        resume: "• Deployed Rust microservices on Kubernetes serving 2M users\n\
                 • Designed PostgreSQL schemas for 15 services\n\
                 • Automated releases with Docker and Terraform",
        answers: &[
            "In my role I was responsible for many important tasks and I always made sure to deliver high quality results using modern technologies and best practices for the business.",
            "In my role I was responsible for many important tasks and I always made sure to deliver high quality results using modern technologies and best practices for the business.",
            "In my role I was responsible for many important tasks and I always made sure to deliver high quality results using modern technologies and best practices for the business.",
        ],
    },
];

const POOL: &[&str] = &[
    "• Maintained Python scripts for nightly reporting",
    "• Supported 4 enterprise customers through onboarding",
    "• Wrote product copy for the spring catalogue",
    "• Coordinated trade show logistics in Lyon",
    "• Built React dashboards for the operations team",
    "• Tested FPGA firmware on lab benches",
    "• Managed a HubSpot pipeline of 200 leads",
    "• Designed event posters in Illustrator",
    "• Certified Scrum Master",
    "• Reduced ticket backlog 35% over one quarter",
    "• Ran social media accounts for a local brewery",
    "• Migrated a MySQL database to AWS",
];

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/campaign");
    fs::create_dir_all(&dir).expect("fixture dir");
    let jobs = jobs();
    let gazetteer = Gazetteer::builtin();
    let pack = TemplatePack::builtin();

    let mut apps = Vec::new();
    for c in COMPLETED {
        let job = jobs.iter().find(|j| j.job_id == c.job).expect("job");
        let claims = ClaimExtractor::new(&gazetteer)
            .with_required_skills(&job.required_skills)
            .extract(c.id, c.resume);
        assert_eq!(claims.len(), c.answers.len(), "{}: one answer per claim", c.id);
        let questions = generate_questions(&claims, SEED, &pack, DEFAULT_QUESTION_CAP).expect("questions");
        let responses = questions
            .iter()
            .zip(c.answers)
            .map(|(q, a)| ResponseRecord {
                question_id: q.question_id.clone(),
                answer_text: a.to_string(),
                session_seed: SEED,
            })
            .collect();
        apps.push(ApplicationRecord {
            applicant_id: c.id.into(),
            job_id: c.job.into(),
            resume_text: c.resume.into(),
            responses,
            completed: true,
        });
    }
    for i in 0..29usize {
        let lines: Vec<&str> = (0..3 + i % 3).map(|k| POOL[(i * 5 + k * 7) % POOL.len()]).collect();
        apps.push(ApplicationRecord {
            applicant_id: format!("b{:02}", i + 1),
            job_id: jobs[i % jobs.len()].job_id.clone(),
            resume_text: lines.join("\n"),
            responses: Vec::new(),
            completed: false,
        });
    }

    let mut jobs_json = serde_json::to_string_pretty(&jobs).expect("jobs");
    jobs_json.push('\n');
    fs::write(dir.join("jobs.json"), jobs_json).expect("write jobs");
    fs::write(dir.join("applications.jsonl"), to_jsonl(&apps)).expect("write applications");
    let config = serde_json::json!({
        "capability_level": "V11",
        "session_seed": SEED,
        "roi": {"rate": 50, "traditional_minutes": 10, "assisted_minutes": 2},
        "rounding_mode": "TableA2",
        "paths": {"jobs": "jobs.json", "applications": "applications.jsonl", "out_dir": "out"}
    });
    let mut config_json = serde_json::to_string_pretty(&config).expect("config");
    config_json.push('\n');
    fs::write(dir.join("config.json"), config_json).expect("write config");
    println!("wrote {} applications to {}", apps.len(), dir.display());
}
