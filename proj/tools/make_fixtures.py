# Copyright 2026 The kgnews Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the bundled fixtures under data/.

Everything is drawn from a fixed seed, so rerunning this script reproduces
the checked-in files byte for byte.

    python3 tools/make_fixtures.py [--out data]
"""

import argparse
import csv
import json
import pathlib
import random

QUARTER = 720

PELICANS = ["Anthony Davis", "Jrue Holiday", "Nikola Mirotic", "Julius Randle",
            "Elfrid Payton", "Wesley Johnston", "Darius Miller", "Cheick Diallo"]
SIXERS = ["Joel Embiid", "Jimmy Butler", "Ben Simmons", "JJ Redick",
          "Wilson Chandler", "T.J. McConnell", "Landry Shamet", "Mike Muscala"]
LAKERS = ["LeBron James", "Kyle Kuzma", "Brandon Ingram", "Lonzo Ball",
          "Josh Hart", "JaVale McGee", "Kentavious Caldwell-Pope", "Rajon Rondo"]
CELTICS = ["Kyrie Irving", "Jayson Tatum", "Al Horford", "Jaylen Brown",
           "Marcus Smart", "Gordon Hayward", "Terry Rozier", "Aron Baynes"]

MADE = {2: "{} makes a two-point field goal", 3: "{} makes a three-pointer",
        1: "{} makes a free throw"}
MISS = {2: "{} misses a two-pointer", 3: "{} misses a three-pointer"}
TURNOVERS = ["{} bad pass turnover", "{} lost ball", "{} out of bounds"]


def clock(seconds):
    return f"{int(seconds) // 60}:{int(seconds) % 60:02d}"


class Log:
    """Accumulates broadcast rows and keeps the running score."""

    def __init__(self, home):
        self.home = home
        self.score = [0, 0]
        self.rows = []

    def add(self, quarter, time, team, text, points=0):
        if points:
            self.score[0 if team == self.home else 1] += points
        self.rows.append([quarter, time, team, text,
                          f"{self.score[0]}:{self.score[1]}"])

    def dif(self):
        return self.score[0] - self.score[1]


# The opening quarter follows the worked example: the Pelicans lead by two
# early, the 76ers pull ahead by as many as 16 with Embiid scoring 13 before
# the low point, and the quarter ends 23:38.
Q1_SCRIPT = [
    ("11:44", "76ers", "Jimmy Butler, two points, miss.", 0),
    ("11:33", "Pelicans", "Wesley Johnston with a rebound.", 0),
    ("11:20", "Pelicans", "Anthony Davis makes a two-point field goal", 2),
    ("10:58", "76ers", "Joel Embiid makes a two-point field goal", 2),
    ("10:40", "Pelicans", "Jrue Holiday misses a three-pointer", 0),
    ("10:38", "76ers", "Ben Simmons defensive rebound", 0),
    ("10:21", "76ers", "JJ Redick makes a three-pointer", 3),
    ("10:05", "Pelicans", "Nikola Mirotic makes a two-point field goal", 2),
    ("9:50", "76ers", "Joel Embiid makes a two-point field goal", 2),
    ("9:31", "Pelicans", "Julius Randle lost ball", 0),
    ("9:15", "76ers", "Joel Embiid makes a three-pointer", 3),
    ("9:15", "76ers", "Ben Simmons with an assist.", 0),
    ("8:58", "Pelicans", "Anthony Davis makes a two-point field goal", 2),
    ("8:40", "76ers", "Jimmy Butler makes a two-point field goal", 2),
    ("8:22", "Pelicans", "Elfrid Payton misses a two-pointer", 0),
    ("8:20", "76ers", "Joel Embiid defensive rebound", 0),
    ("8:05", "76ers", "Jimmy Butler makes a two-point field goal", 2),
    ("7:48", "Pelicans", "Jrue Holiday bad pass turnover", 0),
    ("7:30", "76ers", "JJ Redick makes a three-pointer", 3),
    ("7:30", "76ers", "T.J. McConnell with an assist.", 0),
    ("7:12", "Pelicans", "Pelicans timeout", 0),
    ("6:55", "Pelicans", "Anthony Davis makes a two-point field goal", 2),
    ("6:36", "76ers", "Joel Embiid makes a two-point field goal", 2),
    ("6:20", "Pelicans", "Julius Randle makes a two-point field goal", 2),
    ("6:02", "76ers", "Ben Simmons makes a three-pointer", 3),
    ("5:45", "Pelicans", "Nikola Mirotic misses a three-pointer", 0),
    ("5:43", "Pelicans", "Anthony Davis offensive rebound", 0),
    ("5:40", "Pelicans", "Anthony Davis makes a two-point field goal", 2),
    ("5:20", "76ers", "Wilson Chandler makes a two-point field goal", 2),
    ("5:01", "Pelicans", "Jrue Holiday shooting foul", 0),
    ("5:01", "76ers", "Joel Embiid makes a free throw", 1),
    ("5:01", "76ers", "Joel Embiid makes a free throw", 1),
    ("4:40", "Pelicans", "Elfrid Payton makes a two-point field goal", 2),
    ("4:22", "76ers", "Jimmy Butler misses a two-pointer", 0),
    ("4:20", "76ers", "Joel Embiid offensive rebound", 0),
    ("4:18", "76ers", "Joel Embiid makes a two-point field goal", 2),
    ("3:55", "Pelicans", "Nikola Mirotic misses a three-pointer", 0),
    ("3:53", "76ers", "Ben Simmons defensive rebound", 0),
    ("3:36", "76ers", "Wilson Chandler makes a two-point field goal", 2),
    ("3:15", "Pelicans", "Anthony Davis makes a three-pointer", 3),
    ("2:58", "76ers", "Jimmy Butler makes a two-point field goal", 2),
    ("2:40", "Pelicans", "Jrue Holiday makes a two-point field goal", 2),
    ("2:21", "76ers", "JJ Redick misses a three-pointer", 0),
    ("2:19", "Pelicans", "Julius Randle defensive rebound", 0),
    ("2:05", "Pelicans", "Darius Miller makes a two-point field goal", 2),
    ("1:44", "76ers", "T.J. McConnell makes a two-point field goal", 2),
    ("1:20", "Pelicans", "Julius Randle personal foul", 0),
    ("1:02", "Pelicans", "Anthony Davis makes a two-point field goal", 2),
    ("0:41", "76ers", "Ben Simmons makes a two-point field goal", 2),
    ('17.0"', "Pelicans", "Nikola Mirotic misses a three.", 0),
    ("0.0", "76ers", "Joel Embiid makes a two-point field goal", 2),
]


def check_q1(log):
    """Asserts the shape the worked example depends on."""
    difs, times, embiid = [], [], 0
    for q, t, team, text, score in log.rows:
        h, a = map(int, score.split(":"))
        difs.append(h - a)
        t = t.rstrip('"')
        rem = float(t) if ":" not in t else int(t.split(":")[0]) * 60 + float(t.split(":")[1])
        times.append(QUARTER - rem)
    span = times[-1] - times[0]
    hi, lo = difs.index(max(difs)), difs.index(min(difs))
    assert max(difs) == 2 and min(difs) == -16 and difs[-1] == -15
    assert 6 * (times[hi] - times[0]) < span, "lead must sit in the first sixth"
    assert 6 * (times[lo] - times[0]) >= span and 6 * (times[-1] - times[lo]) >= span
    assert log.rows[-1][4] == "23:38"
    points = {}
    for q, t, team, text, score in log.rows[: lo + 1]:
        for pts, pattern in MADE.items():
            name = pattern.split("{}")[1]
            if text.endswith(name):
                who = text[: -len(name)]
                points[who] = points.get(who, 0) + pts
    ranked = sorted(points.items(), key=lambda kv: -kv[1])
    assert ranked[0] == ("Joel Embiid", 13) and ranked[1][1] < 13, ranked


def planned_possessions(rng, roster, plan, filler=26):
    """Builds one team's possessions for a game.

    `plan` pins exact scoring and offensive rebounds per player:
    {player: {"pts": [..], "oreb": n}}. Defensive rebounds and assists are
    pinned by the caller.
    """
    items = []
    for player, line in plan.items():
        for pts in line.get("pts", []):
            items.append(("made", player, pts))
        for _ in range(line.get("oreb", 0)):
            items.append(("miss_oreb", player))
    others = [p for p in roster if p not in plan]
    for _ in range(filler):
        items.append(("made", rng.choice(others), rng.choice([2, 2, 2, 3])))
    for _ in range(rng.randint(28, 34)):
        items.append(("miss", rng.choice(roster), rng.choice([2, 3])))
    for _ in range(rng.randint(9, 14)):
        items.append(("turnover", rng.choice(roster), rng.choice(TURNOVERS)))
    for _ in range(rng.randint(3, 6)):
        items.append(("foul", rng.choice(roster)))
    rng.shuffle(items)
    return items


def play_quarters(rng, log, quarters, teams, rosters, queues, dreb, assists):
    """Lays queued possessions out over `quarters`, alternating teams."""
    per_q = [max(len(q) for q in queues) // len(quarters) + 1] * len(quarters)
    for qi, quarter in enumerate(quarters):
        steps = []
        for _ in range(per_q[qi]):
            for side in (0, 1):
                if queues[side]:
                    steps.append((side, queues[side].pop()))
        remaining = QUARTER
        gap = (QUARTER - 10) / (1.4 * len(steps) + 1)
        for side, item in steps:
            remaining -= rng.uniform(0.5, 1.5) * gap
            remaining = max(remaining, 0)
            t = clock(remaining)
            team, roster = teams[side], rosters[side]
            other = teams[1 - side]
            kind, player = item[0], item[1]
            if kind == "made":
                pts = item[2]
                if pts == 1:
                    log.add(quarter, t, team, MADE[1].format(player), 1)
                    continue
                log.add(quarter, t, team, MADE[pts].format(player), pts)
                if assists[side] and rng.random() < 0.5:
                    helper = assists[side].pop()
                    if helper != player:
                        log.add(quarter, t, team, f"{helper} with an assist.")
                    else:
                        assists[side].append(helper)
            elif kind in ("miss", "miss_oreb"):
                pts = rng.choice([2, 3])
                if kind == "miss_oreb":
                    shooter = rng.choice([p for p in roster if p != player])
                    log.add(quarter, t, team, MISS[pts].format(shooter))
                    log.add(quarter, clock(max(remaining - 2, 0)), team,
                            f"{player} offensive rebound")
                else:
                    log.add(quarter, t, team, MISS[pts].format(player))
                    grabber = dreb[1 - side].pop() if dreb[1 - side] else rng.choice(rosters[1 - side])
                    log.add(quarter, clock(max(remaining - 2, 0)), other,
                            f"{grabber} defensive rebound")
                remaining = max(remaining - 2, 0)
            elif kind == "turnover":
                log.add(quarter, t, team, item[2].format(player))
            elif kind == "foul":
                fouler = rng.choice(rosters[1 - side])
                log.add(quarter, t, other, f"{fouler} shooting foul")
                for _ in range(2):
                    log.add(quarter, t, team, MADE[1].format(player), 1)
            if rng.random() < 0.03:
                log.add(quarter, clock(remaining), team, f"{team} timeout")
    for side in (0, 1):
        assert not queues[side], "unplaced possessions"


def pelicans_game(rng):
    log = Log("Pelicans")
    for t, team, text, pts in Q1_SCRIPT:
        log.add("Q1", t, team, text, pts)
    check_q1(log)
    rosters = (PELICANS, SIXERS)
    queues = [planned_possessions(rng, PELICANS, {}, 22),
              planned_possessions(rng, SIXERS, {}, 22)]
    play_quarters(rng, log, ["Q2", "Q3", "Q4"], ("Pelicans", "76ers"), rosters,
                  queues, ([], []), ([], []))
    return log


LAKERS_PLAN = {
    "LeBron James": {"pts": [2, 2, 2, 2, 2, 3, 1, 1, 1, 1], "oreb": 2},
    "Kyle Kuzma": {"pts": [3, 3, 2, 2, 2, 2, 2, 1, 1, 1], "oreb": 1},
    "Brandon Ingram": {"pts": [2] * 7},
}


def lakers_game(rng):
    log = Log("Lakers")
    lakers = planned_possessions(rng, LAKERS, LAKERS_PLAN)
    celtics = planned_possessions(rng, CELTICS, {}, 44)
    # Lakers defensive rebounds on Celtics misses.
    celtic_misses = sum(1 for i in celtics if i[0] == "miss")
    dreb = ["LeBron James"] * 11 + ["Kyle Kuzma"] * 5 + ["Brandon Ingram"] * 2
    others = [p for p in LAKERS if p not in LAKERS_PLAN]
    dreb += [rng.choice(others) for _ in range(celtic_misses - len(dreb))]
    rng.shuffle(dreb)
    # Pin every planned assist to a made field goal by a teammate.
    helpers = ["LeBron James"] * 5 + ["Brandon Ingram"] * 2
    assist_of = {}
    for idx, item in enumerate(lakers):
        if helpers and item[0] == "made" and item[2] > 1 and item[1] != helpers[-1]:
            assist_of[idx] = helpers.pop()
    assert not helpers
    lakers = [(*item, assist_of.get(i)) if item[0] == "made" else item
              for i, item in enumerate(lakers)]
    play_game_with_assists(rng, log, lakers, celtics, dreb)
    return log


def play_game_with_assists(rng, log, lakers, celtics, dreb):
    """Like play_quarters but with assists pinned to specific makes."""
    quarters = ["Q1", "Q2", "Q3", "Q4"]
    queues = [list(lakers), list(celtics)]
    dreb_q = [list(dreb), []]
    rosters = (LAKERS, CELTICS)
    teams = ("Lakers", "Celtics")
    per_q = max(len(q) for q in queues) // 4 + 1
    for quarter in quarters:
        steps = []
        for _ in range(per_q):
            for side in (0, 1):
                if queues[side]:
                    steps.append((side, queues[side].pop()))
        remaining = QUARTER
        gap = (QUARTER - 10) / (1.4 * len(steps) + 1)
        for side, item in steps:
            remaining -= rng.uniform(0.5, 1.5) * gap
            remaining = max(remaining, 0)
            t = clock(remaining)
            team, other = teams[side], teams[1 - side]
            kind, player = item[0], item[1]
            if kind == "made":
                pts = item[2]
                log.add(quarter, t, team, MADE[pts].format(player), pts)
                helper = item[3] if len(item) > 3 else None
                if helper is None and side == 1 and pts > 1 and rng.random() < 0.4:
                    helper = rng.choice([p for p in CELTICS if p != player])
                if helper:
                    log.add(quarter, t, team, f"{helper} with an assist.")
            elif kind == "miss_oreb":
                shooter = rng.choice([p for p in rosters[side] if p not in (player, "LeBron James", "Kyle Kuzma", "Brandon Ingram")])
                log.add(quarter, t, team, MISS[rng.choice([2, 3])].format(shooter))
                log.add(quarter, clock(max(remaining - 2, 0)), team, f"{player} offensive rebound")
                remaining = max(remaining - 2, 0)
            elif kind == "miss":
                log.add(quarter, t, team, MISS[item[2]].format(player))
                if side == 1:
                    grabber = dreb_q[0].pop()
                else:
                    grabber = rng.choice(CELTICS)
                log.add(quarter, clock(max(remaining - 2, 0)), other, f"{grabber} defensive rebound")
                remaining = max(remaining - 2, 0)
            elif kind == "turnover":
                log.add(quarter, t, team, item[2].format(player))
            elif kind == "foul":
                fouler = rng.choice(rosters[1 - side])
                log.add(quarter, t, other, f"{fouler} personal foul")
            if rng.random() < 0.03:
                log.add(quarter, clock(remaining), team, f"{team} timeout")
    assert not queues[0] and not queues[1] and not dreb_q[0]


def stat_lines(log):
    lines = {}
    for q, t, team, text, score in log.rows:
        for key, suffix in (("pts2", " makes a two-point field goal"),
                            ("pts3", " makes a three-pointer"),
                            ("pts1", " makes a free throw"),
                            ("reb", " offensive rebound"),
                            ("reb", " defensive rebound"),
                            ("ast", " with an assist.")):
            if text.endswith(suffix):
                who = text[: -len(suffix)]
                s = lines.setdefault(who, {"pts": 0, "reb": 0, "ast": 0})
                if key.startswith("pts"):
                    s["pts"] += int(key[3])
                else:
                    s[key] += 1
    return lines


def write_log(path, log):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["quarter", "time", "team", "event", "score"])
        w.writerows(log.rows)


SCHEMA = {
    "PLAYER": [("name", "string"), ("status", "string"), ("position", "string"),
               ("height", "number"), ("weight", "number"), ("birth_date", "date"),
               ("nationality", "string"), ("jersey_number", "number"),
               ("draft_year", "number"), ("career_points", "number"),
               ("college", "string")],
    "TEAM": [("name", "string"), ("city", "string"), ("partition", "string"),
             ("arena", "string"), ("founded", "number"), ("head_coach", "string"),
             ("championships", "number"), ("conference", "string")],
    "GAME": [("name", "string"), ("date", "date"), ("season", "string"),
             ("home_team", "string"), ("away_team", "string"),
             ("home_score", "number"), ("away_score", "number"), ("venue", "string")],
}

TEAMS = {
    "lakers": ("Los Angeles Lakers", "Los Angeles", "West", ["Lakers", "LA Lakers"]),
    "celtics": ("Boston Celtics", "Boston", "East", ["Celtics"]),
    "pelicans": ("New Orleans Pelicans", "New Orleans", "West", ["Pelicans"]),
    "76ers": ("Philadelphia 76ers", "Philadelphia", "East", ["76ers", "Sixers"]),
    "cavaliers": ("Cleveland Cavaliers", "Cleveland", "East", ["Cavaliers", "Cavs"]),
    "heat": ("Miami Heat", "Miami", "East", ["Heat"]),
    "bulls": ("Chicago Bulls", "Chicago", "East", ["Bulls"]),
    "timberwolves": ("Minnesota Timberwolves", "Minneapolis", "West", ["Timberwolves", "Wolves"]),
    "nuggets": ("Denver Nuggets", "Denver", "West", ["Nuggets"]),
    "knicks": ("New York Knicks", "New York", "East", ["Knicks"]),
}

FORMER = {
    "LeBron James": ["cavaliers", "heat"],
    "Jimmy Butler": ["bulls", "timberwolves"],
    "Wilson Chandler": ["nuggets", "knicks", "heat"],
    "Nikola Mirotic": ["bulls"],
    "Julius Randle": ["lakers"],
    "Rajon Rondo": ["celtics", "bulls"],
    "Kyrie Irving": ["cavaliers"],
}

LEADERS = {
    "lakers": (["LeBron James"], ["Kyle Kuzma", "Brandon Ingram"]),
    "celtics": (["Kyrie Irving"], ["Jayson Tatum"]),
    "pelicans": (["Anthony Davis"], ["Jrue Holiday"]),
    "76ers": (["Joel Embiid"], ["Ben Simmons", "Jimmy Butler"]),
}

CAREER = {"LeBron James": 33000, "Anthony Davis": 11059, "Joel Embiid": 4622,
          "Kyrie Irving": 13000}

NICKNAMES = {"LeBron James": ["King James", "LBJ"], "Joel Embiid": ["The Process"],
             "Anthony Davis": ["The Brow"]}

PRIOR_GAMES = [
    ("g20171207_lal_bos", "2017-12-07", "celtics", "lakers", 107, 96, "2017-18"),
    ("g20180208_lal_bos", "2018-02-08", "lakers", "celtics", 104, 111, "2017-18"),
    ("g20171025_nop_phi", "2017-10-25", "pelicans", "76ers", 119, 124, "2017-18"),
    ("g20180329_nop_phi", "2018-03-29", "76ers", "pelicans", 118, 104, "2017-18"),
    ("g20180105_lal_cle", "2018-01-05", "lakers", "cavaliers", 99, 121, "2017-18"),
]


def slug(name):
    return "".join(c for c in name.lower().replace(" ", "_") if c.isalnum() or c == "_")


def build_kg(rng):
    ents, triples, tags = [], [], []
    for tid, (name, city, part, aliases) in sorted(TEAMS.items()):
        ents.append({"id": tid, "class": "TEAM", "aliases": aliases,
                     "attributes": {"name": name, "city": city, "partition": part,
                                    "conference": "Western" if part == "West" else "Eastern",
                                    "founded": rng.randint(1946, 2002)}})
    rosters = {"lakers": LAKERS, "celtics": CELTICS, "pelicans": PELICANS, "76ers": SIXERS}
    for tid, roster in rosters.items():
        for i, player in enumerate(roster):
            attrs = {"name": player, "status": "active",
                     "position": rng.choice(["G", "F", "C"]),
                     "height": rng.randint(185, 216), "weight": rng.randint(80, 125),
                     "jersey_number": rng.randint(0, 99),
                     "birth_date": f"{rng.randint(1985, 1998)}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}"}
            if player in CAREER:
                attrs["career_points"] = CAREER[player]
            ents.append({"id": slug(player), "class": "PLAYER",
                         "aliases": NICKNAMES.get(player, []), "attributes": attrs})
            triples.append({"head": slug(player), "relation": "PLAYS_FOR", "tail": tid})
            for former in FORMER.get(player, []):
                triples.append({"head": slug(player), "relation": "FORMER_TEAM", "tail": former})
    ents.append({"id": "paul_pierce", "class": "PLAYER", "aliases": ["The Truth"],
                 "attributes": {"name": "Paul Pierce", "status": "retired",
                                "career_points": 26397}})
    triples.append({"head": "paul_pierce", "relation": "FORMER_TEAM", "tail": "celtics"})
    for gid, date, home, away, hs, as_, season in PRIOR_GAMES:
        ents.append({"id": gid, "class": "GAME", "aliases": [],
                     "attributes": {"name": f"{TEAMS[home][0]} vs {TEAMS[away][0]}",
                                    "date": date, "season": season, "home_team": home,
                                    "away_team": away, "home_score": hs, "away_score": as_}})
        triples.append({"head": home, "relation": "PARTICIPATED_IN", "tail": gid})
        triples.append({"head": away, "relation": "PARTICIPATED_IN", "tail": gid})
    triples.append({"head": "lakers", "relation": "HISTORICAL_MATCHUP", "tail": "celtics"})
    triples.append({"head": "76ers", "relation": "HISTORICAL_MATCHUP", "tail": "celtics"})
    for tid, (leaders, stars) in LEADERS.items():
        for p in leaders:
            tags.append({"team": tid, "player": slug(p), "role": "LEADER"})
        for p in stars:
            tags.append({"team": tid, "player": slug(p), "role": "STAR"})
    schema = {cls: [{"name": n, "type": t} for n, t in decls] for cls, decls in SCHEMA.items()}
    return schema, {"schema": schema, "entities": ents, "triples": triples, "role_tags": tags}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    ap.add_argument("--seed", type=int, default=20181104)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    (out / "games").mkdir(parents=True, exist_ok=True)
    (out / "kg").mkdir(parents=True, exist_ok=True)

    rng = random.Random(args.seed)
    pel = pelicans_game(rng)
    write_log(out / "games" / "pelicans_76ers.csv", pel)

    lal = lakers_game(rng)
    lines = stat_lines(lal)
    for who, want in (("LeBron James", (17, 13, 5)), ("Kyle Kuzma", (19, 6, 0)),
                      ("Brandon Ingram", (14, 2, 2))):
        got = lines[who]
        assert (got["pts"], got["reb"], got["ast"]) == want, (who, got)
    write_log(out / "games" / "lakers_celtics.csv", lal)

    schema, kg = build_kg(rng)
    assert sum(len(v) for v in schema.values()) == 27
    (out / "kg" / "schema.json").write_text(json.dumps(schema, indent=2) + "\n")
    (out / "kg" / "fixture_kg.json").write_text(json.dumps(kg, indent=2) + "\n")
    manifest = {
        "seed": args.seed,
        "games": {
            "pelicans_76ers": {"home": "Pelicans", "away": "76ers", "final": pel.rows[-1][4]},
            "lakers_celtics": {"home": "Lakers", "away": "Celtics", "final": lal.rows[-1][4]},
        },
        "kg": {"entities": len(kg["entities"]), "triples": len(kg["triples"]),
               "attributes": 27},
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


if __name__ == "__main__":
    main()
