"""Generates the 200-tweet synthetic corpus and matching case counts.

    python make_fixture.py   # rewrites tweets.jsonl and cases.csv
"""

import csv
import json
import random
from datetime import datetime, timedelta, timezone
from pathlib import Path

HERE = Path(__file__).resolve().parent
SEED = 20210701

COUNTRIES = ["AU", "IN", "JP", "BR", "ID", None]
MONTHS = [(2020, 12), (2021, 1), (2021, 2), (2021, 3), (2021, 4), (2021, 5)]

OPENERS = ["", "RT @health_news ", "omg ", "Honestly, ", "tbh ", "@friend ", "FWIW "]
BODIES = [
    "got my first dose of the #covid19vax today, feeling good",
    "thank you to all the nurses and doctors, so grateful",
    "the vaccine rollout is a breakthrough and gives me hope",
    "worried about the side effects of the second shot",
    "this vaccine is a hoax and the pandemic is fake",
    "so annoying that people still ignore #socialdistance rules",
    "sad news, my uncle died waiting for the jab",
    "wow, shocking numbers announced by the ministry today",
    "lol the vaccine queue was longer than the concert queue",
    "according to the official update, 2 million doses administered",
    "stay safe everyone, prayers for the families",
    "we are doomed, worst rollout ever",
    "scared and anxious about getting vaccinated",
    "the vaccine works, efficacy is promising",
    "dm me for the booking link",
    "plandemic microchip nonsense again",
    "confirmed: new vaccination centre opens monday",
    "haha my arm hurts but i am happy",
    "this is stupid, covidiots everywhere",
    "heartbreaking to see hospitals overwhelmed",
]
CLOSERS = ["", " https://t.co/abc123", " 😊", " ☹", " 😢😢", " #vaccine", " www.example.org/news",
           " !!!", " ’cause it’s time", " 🚀"]


def main() -> None:
    rng = random.Random(SEED)
    rows = []
    for i in range(200):
        year, month = rng.choice(MONTHS)
        ts = datetime(year, month, 1, tzinfo=timezone.utc) + timedelta(
            days=rng.randrange(28), seconds=rng.randrange(86400))
        country = rng.choice(COUNTRIES)
        body = rng.choice(BODIES)
        if rng.random() < 0.3:
            body += ", " + rng.choice(BODIES)
        text = rng.choice(OPENERS) + body + rng.choice(CLOSERS)
        if rng.random() < 0.2:
            text = text.upper()
        stamp = ts.strftime("%Y-%m-%dT%H:%M:%SZ")
        if i % 17 == 0:
            stamp = ts.strftime("%a %b %d %H:%M:%S +0000 %Y")
        row = {"id": f"{1380000000000000000 + i * 7919}", "created_at": stamp, "text": text}
        if country is not None:
            row["country"] = country.lower() if i % 11 == 0 else country
        rows.append(row)

    lines = [json.dumps(r, ensure_ascii=False) for r in rows]
    # A repeated id, a malformed row and a row with an unparseable date.
    lines.insert(50, json.dumps(rows[3], ensure_ascii=False))
    lines.insert(120, '{"id": "broken", "text": ')
    lines.insert(150, json.dumps({"id": "baddate", "created_at": "2021-02-30T00:00:00Z", "text": "x"}))
    (HERE / "tweets.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")

    with open(HERE / "cases.csv", "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["country", "month", "new_cases"])
        for country in [c for c in COUNTRIES if c]:
            for year, month in MONTHS[:-1]:
                w.writerow([country, f"{year:04d}-{month:02d}", rng.randrange(1000, 500000)])


if __name__ == "__main__":
    main()
