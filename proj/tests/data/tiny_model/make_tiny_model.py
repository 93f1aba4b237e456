"""Builds the tiny exported-model fixture and its expected outputs.

The model is a bag-of-embeddings classifier with 10 outputs (no
OfficialReport head), exported as TorchScript. Expected token ids come from
the transformers BertTokenizer, expected probabilities from running the
scripted module in Python.

    python make_tiny_model.py   # rewrites model.pt, vocab.txt, manifest.json, expected.json
"""

import json
from pathlib import Path

import torch
from transformers import BertTokenizer

HERE = Path(__file__).resolve().parent

LABELS = ["Optimistic", "Thankful", "Empathetic", "Pessimistic", "Anxious", "Sad",
          "Annoyed", "Denial", "Surprise", "Joking"]

VOCAB = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
         "the", "a", "is", "i", "my", "to", "be", "of", "and", "it", "'", "s", "t", "don",
         "vaccine", "vaccin", "##e", "##es", "##ation", "##ated", "covid", "19", "1", "##9",
         "shot", "##s", "got", "feel", "##ing", "good", "great", "thank", "##ful", "you",
         "worried", "side", "effects", "hoax", "fake", "sad", "lol", "wow", "oh", "god",
         "doctor", "##s", "!", ",", ".", "?", "-", "un", "##believ", "##able", "happy"]

TEXTS = [
    "got my covid 19 vaccine today feeling good",
    "thank you doctors",
    "i'm worried about side effects",
    "this vaccine is a hoax",
    "oh my god lol",
    "vaccination vaccinated vaccines",
    "unbelievable",
    "zzqx unknownword",
    "",
    "the the the the the the the the the the the the the the the the the the",
    "Wow, COVID-19 shots!!! Don't be sad.",
    "covid19",
]


class TinyClassifier(torch.nn.Module):
    def __init__(self, vocab_size: int, labels: int):
        super().__init__()
        self.embed = torch.nn.Embedding(vocab_size, 16)
        self.head = torch.nn.Linear(16, labels)

    def forward(self, input_ids: torch.Tensor, attention_mask: torch.Tensor) -> torch.Tensor:
        mask = attention_mask.unsqueeze(-1).to(torch.float32)
        pooled = (self.embed(input_ids) * mask).sum(1) / mask.sum(1).clamp(min=1.0)
        return self.head(torch.tanh(pooled)) * 3.0


def main() -> None:
    torch.manual_seed(20211)
    vocab = list(dict.fromkeys(VOCAB))
    (HERE / "vocab.txt").write_text("\n".join(vocab) + "\n", encoding="utf-8")
    max_length = 16
    manifest = {"format": "torchscript", "model": "model.pt", "vocab": "vocab.txt", "labels": LABELS,
                "max_length": max_length, "lowercase": True, "output": "logits"}
    (HERE / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")

    model = TinyClassifier(len(vocab), len(LABELS)).eval()
    scripted = torch.jit.script(model)
    scripted.save(str(HERE / "model.pt"))

    tok = BertTokenizer(str(HERE / "vocab.txt"), do_lower_case=True)
    cases = []
    for text in TEXTS:
        ids = tok(text, truncation=True, max_length=max_length)["input_ids"]
        with torch.no_grad():
            logits = scripted(torch.tensor([ids]), torch.ones(1, len(ids), dtype=torch.int64))
        probs = torch.sigmoid(logits.double()).reshape(-1).tolist()
        cases.append({"text": text, "tokens": tok.tokenize(text), "ids": ids, "probabilities": probs})
    (HERE / "expected.json").write_text(json.dumps({"labels": LABELS, "cases": cases}, indent=1) + "\n",
                                        encoding="utf-8")


if __name__ == "__main__":
    main()
