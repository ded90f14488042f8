//! Seeded synthetic log corpora.
//!
//! One generator per well-known public log source, each reproducing that
//! source's line layout, message vocabulary and value shapes (timestamps,
//! pids, addresses, block ids, sessions). Output is deterministic per seed.

use std::fmt::Write as _;

use chrono::{Duration, NaiveDate, NaiveDateTime};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum System {
    Android,
    Apache,
    Bgl,
    Hadoop,
    Hdfs,
    HealthApp,
    Hpc,
    Linux,
    Mac,
    OpenSsh,
    OpenStack,
    Proxifier,
    Spark,
    Thunderbird,
    Windows,
    Zookeeper,
}

impl System {
    pub const ALL: [System; 16] = [
        System::Android,
        System::Apache,
        System::Bgl,
        System::Hadoop,
        System::Hdfs,
        System::HealthApp,
        System::Hpc,
        System::Linux,
        System::Mac,
        System::OpenSsh,
        System::OpenStack,
        System::Proxifier,
        System::Spark,
        System::Thunderbird,
        System::Windows,
        System::Zookeeper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            System::Android => "Android",
            System::Apache => "Apache",
            System::Bgl => "BGL",
            System::Hadoop => "Hadoop",
            System::Hdfs => "HDFS",
            System::HealthApp => "HealthApp",
            System::Hpc => "HPC",
            System::Linux => "Linux",
            System::Mac => "Mac",
            System::OpenSsh => "OpenSSH",
            System::OpenStack => "OpenStack",
            System::Proxifier => "Proxifier",
            System::Spark => "Spark",
            System::Thunderbird => "Thunderbird",
            System::Windows => "Windows",
            System::Zookeeper => "Zookeeper",
        }
    }

    pub fn from_name(name: &str) -> Option<System> {
        System::ALL.into_iter().find(|s| s.name().eq_ignore_ascii_case(name))
    }
}

struct Gen {
    rng: ChaCha8Rng,
    now: NaiveDateTime,
}

impl Gen {
    fn new(seed: u64, start: NaiveDateTime) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), now: start }
    }

    fn pick<'a>(&mut self, xs: &[&'a str]) -> &'a str {
        xs.choose(&mut self.rng).copied().expect("non-empty choice")
    }

    fn weighted(&mut self, weights: &[u32]) -> usize {
        let total: u32 = weights.iter().sum();
        let mut x = self.rng.gen_range(0..total);
        for (i, &w) in weights.iter().enumerate() {
            if x < w {
                return i;
            }
            x -= w;
        }
        weights.len() - 1
    }

    fn range(&mut self, lo: u64, hi: u64) -> u64 {
        self.rng.gen_range(lo..hi)
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn hex(&mut self, n: usize) -> String {
        (0..n).map(|_| char::from_digit(self.rng.gen_range(0..16), 16).unwrap()).collect()
    }

    fn uuid(&mut self) -> String {
        format!("{}-{}-{}-{}-{}", self.hex(8), self.hex(4), self.hex(4), self.hex(4), self.hex(12))
    }

    /// Advances the clock: usually by a few milliseconds, sometimes by seconds or minutes.
    fn tick(&mut self, scale_ms: i64) {
        let ms = match self.weighted(&[70, 25, 5]) {
            0 => self.rng.gen_range(0..=scale_ms.max(1)),
            1 => self.rng.gen_range(0..=scale_ms.max(1) * 20),
            _ => self.rng.gen_range(0..=scale_ms.max(1) * 600),
        };
        self.now += Duration::milliseconds(ms);
    }

    fn fmt(&self, pattern: &str) -> String {
        self.now.format(pattern).to_string()
    }

    fn millis(&self) -> u32 {
        self.now.and_utc().timestamp_subsec_millis()
    }

    fn micros(&self) -> u32 {
        self.now.and_utc().timestamp_subsec_micros()
    }

    fn epoch(&self) -> i64 {
        self.now.and_utc().timestamp()
    }
}

fn start(y: i32, m: u32, d: u32, h: u32, min: u32, s: u32) -> NaiveDateTime {
    NaiveDate::from_ymd_opt(y, m, d).unwrap().and_hms_opt(h, min, s).unwrap()
}

/// `lines` lines in the style of `system`, newline-terminated.
pub fn generate(system: System, lines: usize, seed: u64) -> Vec<u8> {
    let seed = seed ^ (system as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    let out = match system {
        System::Android => android(seed, lines),
        System::Apache => apache(seed, lines),
        System::Bgl => bgl(seed, lines),
        System::Hadoop => hadoop(seed, lines),
        System::Hdfs => hdfs(seed, lines),
        System::HealthApp => health_app(seed, lines),
        System::Hpc => hpc(seed, lines),
        System::Linux => linux(seed, lines),
        System::Mac => mac(seed, lines),
        System::OpenSsh => openssh(seed, lines),
        System::OpenStack => openstack(seed, lines),
        System::Proxifier => proxifier(seed, lines),
        System::Spark => spark(seed, lines),
        System::Thunderbird => thunderbird(seed, lines),
        System::Windows => windows(seed, lines),
        System::Zookeeper => zookeeper(seed, lines),
    };
    let mut bytes = Vec::with_capacity(out.iter().map(|l| l.len() + 1).sum());
    for line in out.into_iter().take(lines) {
        bytes.extend_from_slice(line.as_bytes());
        bytes.push(b'\n');
    }
    bytes
}

fn android(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2017, 3, 17, 16, 13, 38));
    let pids = [
        (1702u64, [2395u64, 8671, 1720, 2021]),
        (2227, [2227, 2243, 2250, 2227]),
        (19813, [19813, 19841, 19842, 19813]),
    ];
    let pkgs = [
        "com.tencent.qt.qtl",
        "com.android.systemui",
        "com.tencent.mm",
        "com.android.settings",
        "com.huawei.android.launcher",
    ];
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        g.tick(15);
        let (pid, tids) = pids[g.weighted(&[6, 3, 1])];
        let tid = *tids.choose(&mut g.rng).unwrap();
        let head = format!("{} {:>5} {:>5}", g.fmt("%m-%d %H:%M:%S%.3f"), pid, tid);
        let line = match g.weighted(&[20, 16, 12, 10, 10, 8, 8, 6, 5, 5]) {
            0 => format!(
                "{head} D WindowManager: printFreezingDisplayLogsopening app wtoken = AppWindowToken{{{} token=Token{{{} ActivityRecord{{{} u0 {}/.activity.info.NewsDetailXmlActivity t{}}}}}}}, allDrawn= {}, startingDisplayed =  {}, startingMoved =  false, isRelaunching =  false",
                g.hex(7), g.hex(7), g.hex(7), g.pick(&pkgs), g.range(700, 800), g.pick(&["true", "false"]), g.pick(&["true", "false"])
            ),
            1 => format!(
                "{head} D PowerManagerService: acquire lock={}, flags=0x1, tag=\"View Lock\", name={}, ws=null, uid={}, pid={}",
                g.range(100_000_000, 300_000_000), g.pick(&pkgs), g.pick(&["10037", "1000", "10113"]), pid
            ),
            2 => format!(
                "{head} D PowerManagerService: release:lock={}, flg=0x0, tag=\"{}\", name={}\", ws=WorkSource{{{}}}, uid=1000, pid={}",
                g.range(100_000_000, 300_000_000), g.pick(&["*launch*", "WindowManager", "AudioMix"]), g.pick(&pkgs), g.range(10000, 10200), pid
            ),
            3 => format!("{head} D TextView: visible is system.time.showampm"),
            4 => format!(
                "{head} I PhoneStatusBar: updateNetworkViews: mIsAirplaneMode={}, signalStrength={}",
                g.pick(&["false", "true"]), g.range(0, 5)
            ),
            5 => format!(
                "{head} V WindowManager: Skipping AppWindowToken{{{} token=Token{{{} ActivityRecord{{{} u0 {}/.LauncherActivity t{}}}}}}} -- going to hide",
                g.hex(7), g.hex(7), g.hex(7), g.pick(&pkgs), g.range(1, 20)
            ),
            6 => format!("{head} D DisplayPowerController: Animating brightness: target={}, rate={}", g.range(10, 120), g.pick(&["40", "200"])),
            7 => format!(
                "{head} I ActivityManager: START u0 {{act=android.intent.action.MAIN cat=[android.intent.category.HOME] flg=0x{} cmp={}/.Launcher}} from uid {} on display 0",
                g.hex(8), g.pick(&pkgs), g.range(1000, 10200)
            ),
            8 => format!("{head} W ActivityManager: Unable to start service Intent {{ act=com.huawei.{} }} U=0: not found", g.pick(&["push", "sync", "hwid"])),
            _ => format!("{head} E AndroidRuntime: FATAL EXCEPTION: main Process: {}, PID: {}", g.pick(&pkgs), g.range(1000, 30000)),
        };
        out.push(line);
    }
    out
}

fn apache(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2005, 12, 4, 4, 47, 44));
    let clients = ["24.147.151.74", "222.166.160.184", "61.138.216.91", "218.62.18.218", "82.177.96.6"];
    let mut child = 6725u64;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        g.tick(400);
        let ts = g.fmt("[%a %b %d %H:%M:%S %Y]");
        match g.weighted(&[30, 28, 22, 12, 5, 3]) {
            0 => out.push(format!(
                "{ts} [notice] jk2_init() Found child {} in scoreboard slot {}",
                child,
                g.range(6, 11)
            )),
            1 => out.push(format!("{ts} [notice] workerEnv.init() ok /etc/httpd/conf/workers2.properties")),
            2 => out.push(format!("{ts} [error] mod_jk child workerEnv in error state {}", g.range(6, 10))),
            3 => {
                let c = g.pick(&clients);
                out.push(format!("{ts} [error] [client {c}] Directory index forbidden by rule: /var/www/html/"));
            }
            4 => out.push(format!("{ts} [error] jk2_init() Can't find child {} in scoreboard", child + g.range(0, 40))),
            _ => out.push(format!("{ts} [notice] Apache/2.0.49 (Fedora) configured -- resuming normal operations")),
        }
        if g.chance(0.3) {
            child += g.range(1, 30);
        }
    }
    out
}

fn bgl(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2005, 6, 3, 15, 42, 50));
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        g.tick(300);
        let node = format!(
            "R{:02}-M{}-N{}-C:J{:02}-U{:02}",
            g.range(0, 72),
            g.range(0, 2),
            g.hex(1).to_uppercase(),
            g.range(2, 18),
            g.pick(&["01", "11"])
        );
        let burst = if g.chance(0.4) { g.range(2, 8) } else { 1 };
        let (label, kind, level, msg) = match g.weighted(&[30, 15, 12, 10, 8, 8, 7, 5, 5]) {
            0 => ("-", "KERNEL", "INFO", "instruction cache parity error corrected".to_string()),
            1 => ("-", "KERNEL", "INFO", format!("generating core.{}", g.range(100, 9000))),
            2 => ("-", "KERNEL", "INFO", format!("{} double-hummer alignment exceptions", g.range(1, 100000))),
            3 => ("-", "KERNEL", "INFO", format!("CE sym {}, at 0x{}, mask 0x{}", g.range(0, 32), g.hex(8), g.hex(2))),
            4 => ("KERNDTLB", "KERNEL", "FATAL", "data TLB error interrupt".to_string()),
            5 => (
                "-",
                "APP",
                "FATAL",
                format!(
                    "ciod: failed to read message prefix on control stream (CioStream socket to 172.16.96.{}:{}",
                    g.range(1, 255),
                    g.range(30000, 60000)
                ),
            ),
            6 => ("-", "KERNEL", "INFO", "total of 1 ddr error(s) detected and corrected".to_string()),
            7 => (
                "APPREAD",
                "APP",
                "FATAL",
                format!(
                    "ciod: Error reading message prefix after LOGIN_MESSAGE on CioStream socket to 172.16.96.{}:{}",
                    g.range(1, 255),
                    g.range(30000, 60000)
                ),
            ),
            _ => ("-", "KERNEL", "ERROR", format!("rts: kernel terminated for reason {}", g.pick(&["1004", "1001"]))),
        };
        for _ in 0..burst {
            let line = format!(
                "{label} {} {} {node} {}.{:06} {node} RAS {kind} {level} {msg}",
                g.epoch(),
                g.fmt("%Y.%m.%d"),
                g.fmt("%Y-%m-%d-%H.%M.%S"),
                g.micros()
            );
            out.push(line);
            g.tick(2);
        }
    }
    out
}

fn hadoop(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2015, 10, 18, 18, 1, 47));
    let app = 1445144423722u64;
    let job = g.range(1, 30);
    let mut out = Vec::with_capacity(n);
    let mut progress = [0.0f64; 16];
    while out.len() < n {
        g.tick(60);
        let ts = format!("{},{:03}", g.fmt("%Y-%m-%d %H:%M:%S"), g.millis());
        let task = g.range(0, 16) as usize;
        let attempt = format!("attempt_{app}_{job:04}_m_{task:06}_{}", g.weighted(&[9, 1]));
        let line = match g.weighted(&[22, 18, 15, 12, 10, 8, 6, 5, 4]) {
            0 => {
                progress[task] = (progress[task] + g.rng.gen_range(0.0..0.05)).min(1.0);
                format!(
                    "{ts} INFO [IPC Server handler {} on {}] org.apache.hadoop.mapred.TaskAttemptListenerImpl: Progress of TaskAttempt {attempt} is : {}",
                    g.range(0, 30), 62270, progress[task]
                )
            }
            1 => format!(
                "{ts} INFO [RMCommunicator Allocator] org.apache.hadoop.mapreduce.v2.app.rm.RMContainerAllocator: Recalculating schedule, headroom=<memory:{}, vCores:{}>",
                -(g.range(0, 10) as i64) * 1024, -(g.range(0, 10) as i64)
            ),
            2 => format!(
                "{ts} INFO [AsyncDispatcher event handler] org.apache.hadoop.mapreduce.v2.app.job.impl.TaskAttemptImpl: {attempt} TaskAttempt Transitioned from {} to {}",
                g.pick(&["NEW", "UNASSIGNED", "ASSIGNED", "RUNNING"]), g.pick(&["UNASSIGNED", "ASSIGNED", "RUNNING", "SUCCESS_CONTAINER_CLEANUP"])
            ),
            3 => format!(
                "{ts} INFO [RMCommunicator Allocator] org.apache.hadoop.mapreduce.v2.app.rm.RMContainerAllocator: After Scheduling: PendingReds:{} ScheduledMaps:{} ScheduledReds:0 AssignedMaps:{} AssignedReds:0 CompletedMaps:{} CompletedReds:0 ContAlloc:{} ContRel:0 HostLocal:{} RackLocal:{}",
                g.range(0, 2), g.range(0, 10), g.range(0, 10), g.range(0, 10), g.range(0, 14), g.range(0, 10), g.range(0, 4)
            ),
            4 => format!(
                "{ts} WARN [LeaseRenewer:msrabi@msra-sa-41:9000] org.apache.hadoop.hdfs.LeaseRenewer: Failed to renew lease for [DFSClient_NONMAPREDUCE_{}_1] for {} seconds.  Will retry shortly ...",
                1537864556, g.range(30, 400)
            ),
            5 => format!("{ts} ERROR [RMCommunicator Allocator] org.apache.hadoop.mapreduce.v2.app.rm.RMContainerAllocator: ERROR IN CONTACTING RM. "),
            6 => format!(
                "{ts} INFO [ContainerLauncher #{}] org.apache.hadoop.mapreduce.v2.app.launcher.ContainerLauncherImpl: Processing the event EventType: CONTAINER_REMOTE_LAUNCH for container container_{app}_{job:04}_01_{:06} taskAttempt {attempt}",
                g.range(0, 10), g.range(1, 20)
            ),
            7 => format!(
                "{ts} INFO [main] org.apache.hadoop.mapreduce.v2.app.MRAppMaster: Created MRAppMaster for application appattempt_{app}_{job:04}_000001"
            ),
            _ => format!(
                "{ts} WARN [ResponseProcessor for block BP-1347369012-10.190.173.170-1444972147527:blk_{}_{}] org.apache.hadoop.hdfs.DFSClient: Slow ReadProcessor read fields took {}ms (threshold=30000ms); ack: seqno: {} status: SUCCESS downstreamAckTimeNanos: 0",
                1073742000 + g.range(0, 400), 1000 + g.range(0, 600), g.range(30000, 70000), g.range(1, 300)
            ),
        };
        out.push(line);
    }
    out
}

fn hdfs(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2008, 11, 9, 20, 36, 15));
    let mut out = Vec::with_capacity(n);
    let ip = |g: &mut Gen| format!("10.251.{}.{}", g.range(30, 220), g.range(1, 255));
    while out.len() < n {
        let block: i64 = g.rng.gen();
        let blk = format!("blk_{}", block);
        let size = if g.chance(0.8) { 67108864 } else { g.range(1000, 67108864) };
        let nodes: Vec<String> = (0..3).map(|_| ip(&mut g)).collect();
        let emit = |g: &mut Gen, out: &mut Vec<String>, level: &str, comp: &str, msg: String| {
            g.tick(200);
            out.push(format!("{} {} {level} {comp}: {msg}", g.fmt("%y%m%d %H%M%S"), g.range(13, 700)));
        };
        if g.chance(0.15) {
            let job = format!("job_{}_{:04}", g.fmt("%Y%m%d%H%M"), g.range(1, 40));
            let kind = ["jar", "split", "xml"][g.range(0, 3) as usize];
            let msg = format!("BLOCK* NameSystem.allocateBlock: /mnt/hadoop/mapred/system/{job}/job.{kind}. {blk}");
            emit(&mut g, &mut out, "INFO", "dfs.FSNamesystem", msg);
        }
        for node in &nodes {
            let port = g.range(30000, 60000);
            let msg = format!("Receiving block {blk} src: /{node}:{port} dest: /{node}:50010");
            emit(&mut g, &mut out, "INFO", "dfs.DataNode$DataXceiver", msg);
        }
        for (i, node) in nodes.iter().enumerate() {
            let msg = format!("PacketResponder {} for block {blk} terminating", 2 - i.min(2));
            emit(&mut g, &mut out, "INFO", "dfs.DataNode$PacketResponder", msg);
            emit(
                &mut g,
                &mut out,
                "INFO",
                "dfs.DataNode$PacketResponder",
                format!("Received block {blk} of size {size} from /{node}"),
            );
        }
        for node in &nodes {
            emit(
                &mut g,
                &mut out,
                "INFO",
                "dfs.FSNamesystem",
                format!(
                    "BLOCK* NameSystem.addStoredBlock: blockMap updated: {node}:50010 is added to {blk} size {size}"
                ),
            );
        }
        if g.chance(0.3) {
            let node = nodes[0].clone();
            let to = ip(&mut g);
            emit(
                &mut g,
                &mut out,
                "INFO",
                "dfs.DataNode$DataXceiver",
                format!("{node}:50010 Served block {blk} to /{to}"),
            );
        }
        if g.chance(0.1) {
            let node = nodes[1].clone();
            let to = ip(&mut g);
            emit(
                &mut g,
                &mut out,
                "WARN",
                "dfs.DataNode$DataXceiver",
                format!("{node}:50010:Got exception while serving {blk} to /{to}:"),
            );
        }
        if g.chance(0.2) {
            emit(&mut g, &mut out, "INFO", "dfs.DataBlockScanner", format!("Verification succeeded for {blk}"));
        }
        if g.chance(0.15) {
            let dir = g.range(0, 64);
            emit(
                &mut g,
                &mut out,
                "INFO",
                "dfs.FSDataset",
                format!("Deleting block {blk} file /mnt/hadoop/dfs/data/current/subdir{dir}/{blk}"),
            );
        }
    }
    out
}

fn health_app(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2017, 12, 23, 22, 15, 29));
    let mut steps = 3579u64;
    let mut calories = 126775u64;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        g.tick(30);
        let ts = format!("{}:{}", g.fmt("%Y%m%d-%H:%M:%S"), g.millis());
        let line = match g.weighted(&[22, 16, 12, 10, 10, 8, 8, 6, 4, 4]) {
            0 => {
                steps += g.range(0, 4);
                format!("{ts}|Step_LSC|30002312|onStandStepChanged {steps}")
            }
            1 => format!(
                "{ts}|Step_LSC|30002312|onExtend:{} {} {} {}",
                (g.epoch() / 60) * 60000,
                g.range(0, 20),
                g.range(0, 2),
                g.range(0, 5)
            ),
            2 => format!(
                "{ts}|Step_SPUtils|30002312| getTodayTotalDetailSteps = {}##{}##{}##{}##{}##{}",
                (g.epoch() / 60) * 60000,
                steps + 3400,
                548365,
                8661,
                12266,
                27164404 + g.range(0, 1000)
            ),
            3 => {
                calories += g.range(0, 80);
                format!("{ts}|Step_ExtSDM|30002312|calculateCaloriesWithCache totalCalories={calories}")
            }
            4 => format!("{ts}|Step_ExtSDM|30002312|calculateAltitudeWithCache totalAltitude={}", 240 + g.range(0, 3)),
            5 => format!(
                "{ts}|Step_StandReportReceiver|30002312|onReceive action: android.intent.action.{}",
                g.pick(&["SCREEN_ON", "SCREEN_OFF", "TIME_TICK"])
            ),
            6 => format!(
                "{ts}|Step_LSC|30002312|processHandleBroadcastAction action:android.intent.action.{}",
                g.pick(&["SCREEN_ON", "SCREEN_OFF", "TIME_TICK"])
            ),
            7 => format!("{ts}|Step_StandStepCounter|30002312|flush sensor data"),
            8 => format!(
                "{ts}|Step_SPUtils|30002312|setTodayTotalDetailSteps={}##{}##{}##{}##{}##{}",
                (g.epoch() / 60) * 60000,
                steps + 3400,
                548365,
                8661,
                12266,
                27164404 + g.range(0, 1000)
            ),
            _ => format!(
                "{ts}|HiH_HiSyncUtil|30002312|{}",
                g.pick(&["isSyncSwitchOpen begin", "checkSyncState result = true", "getSyncSwitchState: 1"])
            ),
        };
        out.push(line);
    }
    out
}

fn hpc(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2004, 3, 14, 10, 0, 0));
    let mut id = 134681u64;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        g.tick(2000);
        id += g.range(1, 400);
        let node = format!("node-{}", g.range(0, 256));
        let e = g.epoch();
        let line = match g.weighted(&[20, 18, 14, 12, 10, 10, 8, 8]) {
            0 => format!("{id} {node} unix.hw state_change.unavailable {e} 1 Component State Change: Component \\042alt0\\042 is in the unavailable state (HWID={})", g.range(1000, 4000)),
            1 => format!("{id} {node} node status {e} 1 {}", g.pick(&["running", "configured out", "not responding"])),
            2 => format!("{id} {node} action start {e} 1 clusterAddMember  (command {})", g.range(1000, 3000)),
            3 => format!("{id} {node} boot_cmd new {e} 1 Targeting domains:node-D{} and nodes:node-[{}-{}] child of command {}", g.range(0, 8), g.range(0, 32) * 8, g.range(32, 64) * 8 - 1, g.range(1000, 3000)),
            4 => format!("{id} gige{} link error {e} 1 Link error on broadcast tree Interconnect-0T00:00:{}:{}", g.range(0, 8), g.range(0, 4), g.range(0, 2)),
            5 => format!("{id} {node} node psu {e} 1 psu failure\\ ambient={}", g.range(25, 45)),
            6 => format!("{id} {node} action error {e} 1 halt (command {}) Error: Command aborted: cannot get shutdown lock", g.range(1000, 3000)),
            _ => format!("{id} Interconnect-{}T{:02} switch_module bcast_tree {e} 1 Temperature ({}C) exceeds warning threshold", g.range(0, 2), g.range(0, 40), g.range(50, 90)),
        };
        out.push(line);
    }
    out
}

fn linux(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2005, 6, 14, 15, 16, 1));
    let mut pid = 19939u64;
    let rhosts =
        ["218.188.2.4", "220-135-151-1.hinet-ip.hinet.net", "61.53.154.93", "211.72.151.162", "massive.merukuru.org"];
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        g.tick(3000);
        pid += g.range(1, 60);
        let ts = g.fmt("%b %e %H:%M:%S");
        match g.weighted(&[30, 20, 15, 10, 10, 8, 7]) {
            0 => {
                let host = g.pick(&rhosts);
                let root = g.chance(0.4);
                for _ in 0..g.range(1, 6) {
                    let p = pid + g.range(0, 5);
                    let user = if root { "  user=root" } else { "" };
                    out.push(format!("{ts} combo sshd(pam_unix)[{p}]: authentication failure; logname= uid=0 euid=0 tty=NODEVssh ruser= rhost={host}{user}"));
                }
            }
            1 => out.push(format!("{ts} combo sshd(pam_unix)[{pid}]: check pass; user unknown")),
            2 => {
                let user = g.pick(&["cyrus", "news", "root"]);
                out.push(format!("{ts} combo su(pam_unix)[{pid}]: session opened for user {user} by (uid=0)"));
                g.tick(500);
                out.push(format!("{} combo su(pam_unix)[{pid}]: session closed for user {user}", g.fmt("%b %e %H:%M:%S")));
            }
            3 => out.push(format!("{ts} combo logrotate: ALERT exited abnormally with [1]")),
            4 => {
                let ip = format!("{}.{}.{}.{}", g.range(1, 223), g.range(0, 255), g.range(0, 255), g.range(1, 255));
                let stamp = g.fmt("%a %b %e %H:%M:%S %Y");
                out.push(format!("{ts} combo ftpd[{pid}]: connection from {ip} () at {stamp}"));
            }
            5 => out.push(format!("{ts} combo kernel: {}", g.pick(&[
                "Linux version 2.6.5-1.358 (bhcompile@bugs.build.redhat.com) (gcc version 3.3.3 20040412 (Red Hat Linux 3.3.3-7)) #1 Sat May 8 09:04:50 EDT 2004",
                "BIOS-provided physical RAM map:",
                "klogd 1.4.1, log source = /proc/kmsg started.",
            ]))),
            _ => out.push(format!("{ts} combo xinetd[{}]: START: {} pid={pid} from={}.{}.{}.{}", g.range(1000, 3000), g.pick(&["ftp", "telnet"]), g.range(1, 223), g.range(0, 255), g.range(0, 255), g.range(1, 255))),
        }
    }
    out
}

fn mac(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2017, 7, 1, 9, 0, 55));
    let host = "calvisitor-10-105-160-95";
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        g.tick(1500);
        let ts = g.fmt("%b %e %H:%M:%S");
        let line = match g.weighted(&[18, 14, 12, 12, 10, 10, 8, 8, 8]) {
            0 => format!("{ts} {host} kernel[0]: IOThunderboltSwitch<0>(0x0)::listenerCallback - Thunderbolt HPD packet for route = 0x0 port = {} unplug = {}", g.range(10, 13), g.range(0, 2)),
            1 => format!("{ts} {host} kernel[0]: ARPT: {}.{:06}: AirPort_Brcm43xx::syncPowerState: WWEN[{}]", 620000 + g.range(0, 90000), g.range(0, 1_000_000), g.pick(&["enabled", "disable"])),
            2 => format!("{ts} {host} com.apple.CDScheduler[43]: Thermal pressure state: {} Memory pressure state: {}", g.range(0, 2), g.range(0, 2)),
            3 => format!("{ts} {host} QQ[10018]: FA||Url||taskID[{}] dealloc", 2019352994 + g.range(0, 200)),
            4 => format!("{ts} {host} com.apple.AddressBook.InternetAccountsBridge[{}]: Checking iCloud account status", g.range(10000, 40000)),
            5 => format!("{ts} {host} symptomsd[215]: __73-[NetworkAnalyticsEngine observeValueForKeyPath:ofObject:change:context:]_block_invoke unexpected switch value {}", g.range(1, 4)),
            6 => format!("{ts} {host} kernel[0]: AppleCamIn::systemWakeCall - messageType = 0x{}", g.pick(&["E0000340", "E0000320"])),
            7 => format!("{ts} {host} sharingd[{}]: {}.{:03} : {}", g.range(200, 400), g.fmt("%H:%M:%S"), g.millis(), g.pick(&["BTLE scanner Powered On", "SDStatusMonitor::kStatusWirelessPowerChanged", "Scanning mode Contacts Only"])),
            _ => format!("{ts} {host} Google Chrome Helper[{}]: Couldn't set {} on {}", g.range(10000, 60000), g.pick(&["default", "TCP_NODELAY"]), g.hex(8)),
        };
        out.push(line);
    }
    out
}

fn openssh(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2016, 12, 10, 6, 55, 46));
    let mut pid = 24200u64;
    let users = ["webmaster", "admin", "test", "oracle", "support", "ftpuser", "git", "pi"];
    let attackers =
        ["173.234.31.186", "112.95.230.3", "183.62.140.253", "187.141.143.180", "103.99.0.122", "5.188.10.180"];
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        g.tick(2000);
        pid += g.range(1, 40);
        let ip = g.pick(&attackers).to_string();
        let port = g.range(1024, 65000);
        let head = |g: &Gen| format!("{} LabSZ sshd[{pid}]:", g.fmt("%b %e %H:%M:%S"));
        if g.chance(0.45) {
            let user = g.pick(&users);
            out.push(format!(
                "{} reverse mapping checking getaddrinfo for ns.{}.com [{ip}] failed - POSSIBLE BREAK-IN ATTEMPT!",
                head(&g),
                g.hex(10)
            ));
            out.push(format!("{} Invalid user {user} from {ip}", head(&g)));
            out.push(format!("{} input_userauth_request: invalid user {user} [preauth]", head(&g)));
            out.push(format!("{} pam_unix(sshd:auth): check pass; user unknown", head(&g)));
            out.push(format!(
                "{} pam_unix(sshd:auth): authentication failure; logname= uid=0 euid=0 tty=ssh ruser= rhost={ip} ",
                head(&g)
            ));
            g.tick(300);
            out.push(format!("{} Failed password for invalid user {user} from {ip} port {port} ssh2", head(&g)));
            out.push(format!("{} Received disconnect from {ip}: 11: Bye Bye [preauth]", head(&g)));
        } else {
            out.push(format!("{} pam_unix(sshd:auth): authentication failure; logname= uid=0 euid=0 tty=ssh ruser= rhost={ip}  user=root", head(&g)));
            let tries = g.range(1, 6);
            for _ in 0..tries {
                g.tick(200);
                out.push(format!("{} Failed password for root from {ip} port {port} ssh2", head(&g)));
            }
            if tries > 1 && g.chance(0.5) {
                out.push(format!(
                    "{} message repeated {} times: [ Failed password for root from {ip} port {port} ssh2]",
                    head(&g),
                    tries
                ));
            }
            if g.chance(0.5) {
                out.push(format!("{} Disconnecting: Too many authentication failures for root [preauth]", head(&g)));
                out.push(format!("{} PAM {} more authentication failures; logname= uid=0 euid=0 tty=ssh ruser= rhost={ip}  user=root", head(&g), tries));
                out.push(format!("{} PAM service(sshd) ignoring max retries; {} > 3", head(&g), tries + 1));
            } else {
                out.push(format!("{} Connection closed by {ip} [preauth]", head(&g)));
            }
        }
    }
    out
}

fn openstack(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2017, 5, 16, 0, 0, 0));
    let tenant = "54fadb412c4e40cdbaed9335e4c35a9e";
    let user = "113d3a99c3da401fbd62cc2caa5b96d2";
    let instances: Vec<String> = (0..6).map(|_| g.uuid()).collect();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        g.tick(300);
        let ts = format!("{}.{:03}", g.fmt("%Y-%m-%d %H:%M:%S"), g.millis());
        let inst = instances.choose(&mut g.rng).unwrap().clone();
        let line = match g.weighted(&[40, 15, 12, 10, 8, 8, 7]) {
            0 => format!(
                "nova-api.log.1.2017-05-16_13:53:08 {ts} 25746 INFO nova.osapi_compute.wsgi.server [req-{} {user} {tenant} - - -] 10.11.10.1 \"GET /v2/{tenant}/servers/detail HTTP/1.1\" status: 200 len: {} time: 0.{:07}",
                g.uuid(), 1893 + g.range(0, 3) * 10, g.range(1_000_000, 3_000_000)
            ),
            1 => format!(
                "nova-compute.log.1.2017-05-16_13:55:31 {ts} 2931 INFO nova.compute.manager [req-{} - - - - -] [instance: {inst}] VM {} (Lifecycle Event)",
                g.uuid(), g.pick(&["Started", "Stopped", "Paused", "Resumed"])
            ),
            2 => format!(
                "nova-compute.log.1.2017-05-16_13:55:31 {ts} 2931 INFO nova.virt.libvirt.imagecache [req-{} - - - - -] image 0673dd71-34c5-4fbb-86c4-40623fbe45b4 at (/var/lib/nova/instances/_base/a489c868f0c37da93b76227c91bb03908ac0e742): checking",
                g.uuid()
            ),
            3 => format!(
                "nova-compute.log.1.2017-05-16_13:55:31 {ts} 2931 INFO nova.compute.resource_tracker [req-{} - - - - -] Final resource view: name=cp-1.slowvm1.tcloud-pg0.utah.cloudlab.us phys_ram=64172MB used_ram={}MB phys_disk=15GB used_disk={}GB total_vcpus=16 used_vcpus={} pci_stats=[]",
                g.uuid(), 512 + g.range(0, 5) * 2048, g.range(0, 5) * 20, g.range(0, 5)
            ),
            4 => format!(
                "nova-api.log.1.2017-05-16_13:53:08 {ts} 25746 INFO nova.metadata.wsgi.server [-] 10.11.21.{},10.11.10.1 \"GET /openstack/2013-10-17/meta_data.json HTTP/1.1\" status: 200 len: {} time: 0.{:07}",
                g.range(120, 150), 967 + g.range(0, 2), g.range(1_000_000, 3_000_000)
            ),
            5 => format!(
                "nova-compute.log.1.2017-05-16_13:55:31 {ts} 2931 INFO nova.compute.claims [req-{} {user} {tenant} - - -] [instance: {inst}] Total memory: 64172 MB, used: {}.00 MB",
                g.uuid(), 512 + g.range(0, 5) * 2048
            ),
            _ => format!(
                "nova-compute.log.1.2017-05-16_13:55:31 {ts} 2931 WARNING nova.compute.manager [req-{} - - - - -] While synchronizing instance power states, found {} instances in the database and {} instances on the hypervisor.",
                g.uuid(), g.range(0, 4), g.range(0, 4)
            ),
        };
        out.push(line);
    }
    out
}

fn proxifier(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2016, 10, 30, 16, 49, 6));
    let apps = ["chrome.exe", "Dropbox.exe", "WeChat.exe", "YodaoDict.exe", "SogouCloud.exe", "QQ.exe"];
    let hosts = [
        "proxy.cse.cuhk.edu.hk:5070",
        "play.google.com:443",
        "client-lb.dropbox.com:443",
        "www.google.com.hk:443",
        "short.weixin.qq.com:80",
        "183.60.15.188:8080",
    ];
    let proxy = "proxy.cse.cuhk.edu.hk:5070";
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        g.tick(1000);
        let ts = g.fmt("[%m.%d %H:%M:%S]");
        let app = g.pick(&apps);
        let host = g.pick(&hosts);
        match g.weighted(&[40, 40, 12, 8]) {
            0 => out.push(format!("{ts} {app} - {host} open through proxy {proxy} HTTPS")),
            1 => {
                let sent = g.range(0, 20000);
                let recv = g.range(0, 200000);
                let fmt_bytes = |b: u64| {
                    if b >= 1024 {
                        format!("{b} bytes ({:.2} KB)", b as f64 / 1024.0)
                    } else {
                        format!("{b} bytes")
                    }
                };
                let life = if g.chance(0.4) {
                    "<1 sec".to_string()
                } else {
                    format!("{:02}:{:02}", g.range(0, 3), g.range(0, 60))
                };
                out.push(format!("{ts} {app} - {host} close, {} sent, {} received, lifetime {life}", fmt_bytes(sent), fmt_bytes(recv)));
            }
            2 => out.push(format!("{ts} {app} - {host} error : Could not connect through proxy {proxy} - Proxy server cannot establish a connection with the target, status code 403")),
            _ => out.push(format!("{ts} {app} *64 - {host} open through proxy {proxy} HTTPS")),
        }
    }
    out
}

fn spark(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2017, 6, 9, 20, 10, 40));
    let mut tid = 0u64;
    let mut stage = 0u64;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        g.tick(40);
        let ts = |g: &Gen| g.fmt("%y/%m/%d %H:%M:%S");
        if g.chance(0.05) {
            stage += 1;
            out.push(format!("{} INFO broadcast.TorrentBroadcast: Started reading broadcast variable {stage}", ts(&g)));
            out.push(format!("{} INFO storage.MemoryStore: Block broadcast_{stage}_piece0 stored as bytes in memory (estimated size {}.{} KB, free {}.{} KB)", ts(&g), g.range(1, 30), g.range(0, 10), g.range(10, 400), g.range(0, 10)));
            out.push(format!(
                "{} INFO broadcast.TorrentBroadcast: Reading broadcast variable {stage} took {} ms",
                ts(&g),
                g.range(5, 400)
            ));
            out.push(format!("{} INFO storage.MemoryStore: Block broadcast_{stage} stored as values in memory (estimated size {}.{} KB, free {}.{} KB)", ts(&g), g.range(1, 30), g.range(0, 10), g.range(10, 400), g.range(0, 10)));
            continue;
        }
        let part = g.range(0, 40);
        out.push(format!("{} INFO executor.CoarseGrainedExecutorBackend: Got assigned task {tid}", ts(&g)));
        out.push(format!("{} INFO executor.Executor: Running task {part}.0 in stage {stage}.0 (TID {tid})", ts(&g)));
        if g.chance(0.5) {
            out.push(format!(
                "{} INFO spark.CacheManager: Partition rdd_{}_{part} not found, computing it",
                ts(&g),
                stage * 2
            ));
            out.push(format!(
                "{} INFO rdd.HadoopRDD: Input split: hdfs://10.10.34.11:9000/pjhe/test/{}/vm_{}.txt:{}+{}",
                ts(&g),
                g.range(1, 4),
                g.range(1, 10),
                g.range(0, 20) * 13384,
                13384
            ));
        } else {
            out.push(format!("{} INFO storage.BlockManager: Found block rdd_{}_{part} locally", ts(&g), stage * 2));
        }
        g.tick(200);
        out.push(format!("{} INFO executor.Executor: Finished task {part}.0 in stage {stage}.0 (TID {tid}). {} bytes result sent to driver", ts(&g), g.range(2000, 3000)));
        tid += 1;
    }
    out
}

fn thunderbird(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2005, 11, 9, 12, 1, 1));
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        g.tick(800);
        let node = match g.weighted(&[6, 2, 1]) {
            0 => format!("{}n{}", g.pick(&["a", "b", "d"]), g.range(1, 1000)),
            1 => "tbird-admin1".to_string(),
            _ => "tbird-sm1".to_string(),
        };
        let prefix = format!("{} {} {node} {}", g.epoch(), g.fmt("%Y.%m.%d"), g.fmt("%b %-d %H:%M:%S"));
        let src = if node.starts_with("tbird") { format!("local@{node}") } else { format!("{node}/{node}") };
        let line = match g.weighted(&[22, 22, 14, 12, 10, 8, 6, 6]) {
            0 => format!("- {prefix} {src} crond(pam_unix)[{}]: session {} for user root", g.range(1000, 30000), g.pick(&["opened", "closed"])),
            1 => format!("- {prefix} {src} crond[{}]: (root) CMD (run-parts /etc/cron.hourly)", g.range(1000, 30000)),
            2 => format!("- {prefix} {src} postfix/postdrop[{}]: warning: unable to look up public/pickup: No such file or directory", g.range(1000, 30000)),
            3 => format!("- {prefix} {src} ntpd[{}]: synchronized to 10.100.{}.250, stratum {}", g.range(1000, 5000), g.range(16, 30), g.range(2, 4)),
            4 => format!("- {prefix} src@{node} ib_sm.x[{}]: [ib_sm_sweep.c:{}]: ********************** NEW SWEEP ********************", g.range(20000, 30000), 1831),
            5 => format!("- {prefix} {src} kernel: Losing some ticks... checking if CPU frequency changed."),
            6 => format!("VAPI {prefix} {src} kernel: [KERNEL_IB][ib_mad_dispatch][/mnt_projects/sysapps/src/ib/topspin/topspin-src-3.2.0-16/ib/ts_api_ng/mad/obj_host_amd64_custom1_rhel4/ts_ib_mad/mad_filter.c:{}]Bad MAD class", g.range(100, 200)),
            _ => format!("- {prefix} {src} sshd[{}]: Accepted publickey for root from 10.100.{}.{} port {} ssh2", g.range(1000, 30000), g.range(0, 30), g.range(1, 255), g.range(30000, 60000)),
        };
        out.push(line);
    }
    out
}

fn windows(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2016, 9, 28, 4, 30, 30));
    let kbs = ["KB2847927", "KB2533552", "KB976902", "KB3004375", "KB2992611"];
    let mut csi = 1u64;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        g.tick(200);
        let ts = g.fmt("%Y-%m-%d %H:%M:%S");
        let line = match g.weighted(&[30, 20, 12, 10, 8, 8, 6, 6]) {
            0 => format!(
                "{ts}, Info                  CBS    Read out cached package applicability for package: Package_for_{}~31bf3856ad364e35~amd64~~6.1.1.{}, ApplicableState: 112, CurrentState:112",
                g.pick(&kbs), g.range(0, 3)
            ),
            1 => {
                csi += 1;
                format!(
                    "{ts}, Info                  CSI    {:08x} IAdvancedInstallerAwareStore_ResolvePendingTransactions (call 1) (flags = 00000004, progress = NULL, phase = 0, pdwDisposition = @0x{})",
                    csi, g.hex(6)
                )
            }
            2 => format!("{ts}, Info                  CBS    {}", g.pick(&[
                "Ending TrustedInstaller initialization.",
                "Starting the TrustedInstaller main loop.",
                "TrustedInstaller service starts successfully.",
                "SQM: Initializing online with Windows opt-in: False",
                "SQM: Cleaning up report files older than 10 days.",
                "No startup processing required, TrustedInstaller service was not set as autostart, or else a reboot is still pending.",
            ])),
            3 => format!("{ts}, Info                  CBS    Session: {}_{} initialized by client WindowsUpdateAgent.", 30546174 + g.range(0, 20), g.range(3_000_000_000, 4_000_000_000)),
            4 => format!("{ts}, Info                  CBS    Loaded Servicing Stack v6.1.7601.23505 with Core: C:\\Windows\\winsxs\\amd64_microsoft-windows-servicingstack_31bf3856ad364e35_6.1.7601.23505_none_681aa442f6fed7f0\\cbscore.dll"),
            5 => {
                csi += 1;
                format!(
                    "{ts}, Info                  CSI    {:08x}@{}:{}.{:03} WcpInitialize (wcp.dll version 0.0.0.6) called (stack @0x7fed806eb5d @0x7fefa1c8728 @0x7fefa1c8856 @0xff83e474 @0xff83d7de @0xff83db2f)",
                    csi, g.fmt("%Y/%-m/%-d:%H:%M:%S"), g.range(0, 60), g.millis()
                )
            }
            6 => format!("{ts}, Info                  CBS    Warning: Unrecognized packageExtended attribute."),
            _ => format!("{ts}, Info                  CBS    Expecting attribute name [HRESULT = 0x800f080d - CBS_E_MANIFEST_INVALID_ITEM]"),
        };
        out.push(line);
    }
    out
}

fn zookeeper(seed: u64, n: usize) -> Vec<String> {
    let mut g = Gen::new(seed, start(2015, 7, 29, 17, 41, 44));
    let peers = ["10.10.34.11", "10.10.34.12", "10.10.34.13"];
    let mut session = 0x14ede63a5a70000u64;
    let mut out = Vec::with_capacity(n);
    let write = |g: &mut Gen, out: &mut Vec<String>, level: &str, thread: &str, msg: String| {
        g.tick(150);
        out.push(format!("{},{:03} - {level:<5} [{thread}] - {msg}", g.fmt("%Y-%m-%d %H:%M:%S"), g.millis()));
    };
    while out.len() < n {
        let peer = g.pick(&peers);
        let port = g.range(30000, 60000);
        match g.weighted(&[40, 15, 15, 10, 10, 10]) {
            0 => {
                session += 1;
                let nio = "NIOServerCxn.Factory:0.0.0.0/0.0.0.0:2181";
                write(
                    &mut g,
                    &mut out,
                    "INFO",
                    &format!("{nio}:NIOServerCnxnFactory@197"),
                    format!("Accepted socket connection from /{peer}:{port}"),
                );
                write(
                    &mut g,
                    &mut out,
                    "INFO",
                    "SyncThread:1:ZooKeeperServer@595",
                    format!(
                        "Established session 0x{session:x} with negotiated timeout 10000 for client /{peer}:{port}"
                    ),
                );
                if g.chance(0.5) {
                    write(
                        &mut g,
                        &mut out,
                        "WARN",
                        &format!("{nio}:NIOServerCnxn@357"),
                        "caught end of stream exception".to_string(),
                    );
                }
                write(
                    &mut g,
                    &mut out,
                    "INFO",
                    "ProcessThread(sid:1 cport:-1)::PrepRequestProcessor@476",
                    format!("Processed session termination for sessionid: 0x{session:x}"),
                );
                write(
                    &mut g,
                    &mut out,
                    "INFO",
                    &format!("{nio}:NIOServerCnxn@1001"),
                    format!("Closed socket connection for client /{peer}:{port} which had sessionid 0x{session:x}"),
                );
            }
            1 => {
                let t = 200 * (1u64 << g.range(0, 6));
                write(
                    &mut g,
                    &mut out,
                    "INFO",
                    "QuorumPeer[myid=1]/0:0:0:0:0:0:0:0:2181:FastLeaderElection@774",
                    format!("Notification time out: {t}"),
                );
            }
            2 => {
                write(
                    &mut g,
                    &mut out,
                    "INFO",
                    &format!("/{peer}:3888:QuorumCnxManager$Listener@493"),
                    format!("Received connection request /{peer}:{port}"),
                );
            }
            3 => {
                let sid = 188978561024u64;
                write(
                    &mut g,
                    &mut out,
                    "WARN",
                    &format!("SendWorker:{sid}:QuorumCnxManager$SendWorker@688"),
                    "Send worker leaving thread".to_string(),
                );
                write(
                    &mut g,
                    &mut out,
                    "WARN",
                    &format!("RecvWorker:{sid}:QuorumCnxManager$RecvWorker@765"),
                    "Interrupting SendWorker".to_string(),
                );
                write(
                    &mut g,
                    &mut out,
                    "WARN",
                    &format!("RecvWorker:{sid}:QuorumCnxManager$RecvWorker@762"),
                    "Connection broken for id 188978561024, my id = 1, error = ".to_string(),
                );
            }
            4 => {
                write(
                    &mut g,
                    &mut out,
                    "ERROR",
                    &format!("LearnerHandler-/{peer}:{port}:LearnerHandler@562"),
                    "Unexpected exception causing shutdown while sock still open".to_string(),
                );
                write(
                    &mut g,
                    &mut out,
                    "WARN",
                    &format!("LearnerHandler-/{peer}:{port}:LearnerHandler@575"),
                    format!("******* GOODBYE /{peer}:{port} ********"),
                );
            }
            _ => {
                write(
                    &mut g,
                    &mut out,
                    "INFO",
                    "main:QuorumPeerConfig@101",
                    "Reading configuration from: /etc/zookeeper/conf/zoo.cfg".to_string(),
                );
                write(
                    &mut g,
                    &mut out,
                    "INFO",
                    "main:QuorumPeerConfig@334",
                    "Defaulting to majority quorums".to_string(),
                );
            }
        }
    }
    out
}

/// Metric-style log dominated by unstructured numbers: monotone counters,
/// random-walk gauges and small latency readings.
pub fn numeric_heavy(lines: usize, seed: u64) -> Vec<u8> {
    let mut g = Gen::new(seed, start(2021, 1, 1, 0, 0, 0));
    let mut out = String::with_capacity(lines * 96);
    let (mut rx, mut tx, mut requests, mut errors) = (8_000_000u64, 3_000_000u64, 120_000u64, 40u64);
    let (mut cpu, mut mem) = (40i64, 4_000_000i64);
    for _ in 0..lines {
        g.tick(20);
        rx += g.range(0, 5000);
        tx += g.range(0, 2000);
        requests += g.range(0, 20);
        errors += g.chance(0.01) as u64;
        cpu = (cpu + g.range(0, 7) as i64 - 3).clamp(0, 100);
        mem = (mem + g.range(0, 2001) as i64 - 1000).max(0);
        let _ = writeln!(
            out,
            "metrics {} {} {} {} {} {} {} {} {} {}",
            g.epoch(),
            g.millis(),
            rx,
            tx,
            requests,
            errors,
            cpu,
            mem,
            g.range(10, 60),
            g.range(0, 20),
        );
    }
    out.into_bytes()
}

/// A mixed service log cycling through every source, used for throughput runs.
pub fn mixed_service_log(lines: usize, seed: u64) -> Vec<u8> {
    let per = lines.div_ceil(System::ALL.len());
    let parts: Vec<Vec<String>> = System::ALL
        .iter()
        .map(|&s| {
            let text = generate(s, per, seed);
            String::from_utf8(text).unwrap().lines().map(str::to_string).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut written = 0;
    'outer: for block in 0..per.div_ceil(50) {
        for part in &parts {
            for line in part.iter().skip(block * 50).take(50) {
                if written == lines {
                    break 'outer;
                }
                out.extend_from_slice(line.as_bytes());
                out.push(b'\n');
                written += 1;
            }
        }
    }
    out
}
