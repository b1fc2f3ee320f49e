import pytest
import torch
from transformers import BertConfig, BertModel, BertTokenizer

LATIN = ["guten tag welt", "hello world", "abc def", "x", "hello guten world tag"]
CYRILLIC = ["абв где", "вба агд", "аб ев гд", "д", "абв агд вба еж"]

VOCAB = (
    ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
    + list("abcdefghijklmnopqrstuvwxyz")
    + ["##" + c for c in "abcdefghijklmnopqrstuvwxyz"]
    + list("абвгдеж")
    + ["##" + c for c in "абвгдеж"]
    + ["hello", "world", "guten", "tag"]
)


@pytest.fixture(scope="session")
def checkpoint(tmp_path_factory):
    """Tiny randomly-initialized multilingual-style checkpoint saved locally."""
    root = tmp_path_factory.mktemp("ckpt")
    (root / "vocab.txt").write_text("\n".join(VOCAB), encoding="utf-8")
    tokenizer = BertTokenizer(str(root / "vocab.txt"))
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=16,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=32,
        max_position_embeddings=64,
    )
    torch.manual_seed(1234)
    model = BertModel(config)
    model.save_pretrained(root)
    tokenizer.save_pretrained(root)
    return root


@pytest.fixture(scope="session")
def corpus(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    (root / "deu_Latn.txt").write_text("\n".join(LATIN) + "\n", encoding="utf-8")
    (root / "rus_Cyrl.txt").write_text("\n".join(CYRILLIC) + "\n", encoding="utf-8")
    return root
