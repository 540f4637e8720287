import os
from pathlib import Path

import pytest

os.environ.setdefault("HF_HUB_OFFLINE", "1")
os.environ.setdefault("TRANSFORMERS_VERBOSITY", "error")
os.environ.setdefault("HF_HUB_DISABLE_PROGRESS_BARS", "1")

REPO_ROOT = Path(__file__).resolve().parents[2]
CORPUS = REPO_ROOT / "tests" / "data" / "corpus"

VOCAB = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
         "einstein", "developed", "relativity", "the", "a", ".", "was", "by",
         "marie", "discovered", "radium", "polonium", "telephone", "invented",
         "bell", "edison", "america", "columbus", "paris", "is", "capital",
         "of", "france", "water", "liquid", "gas", "phone", "made", "nokia",
         "broke", "law", "required", "english", "french", "to", "be", "taught",
         "in", "schools", "students", "read", "books", "novels", "student",
         "wrote", "essays", "quickly"]


@pytest.fixture(scope="session")
def tiny_checkpoint(tmp_path_factory) -> Path:
    """A small randomly initialized masked LM saved locally (no network)."""
    import torch
    from transformers import BertConfig, BertForMaskedLM, BertTokenizer

    root = tmp_path_factory.mktemp("checkpoint")
    vocab_file = root / "vocab.txt"
    vocab_file.write_text("\n".join(VOCAB) + "\n", encoding="utf-8")
    tokenizer = BertTokenizer(str(vocab_file), do_lower_case=True)
    config = BertConfig(vocab_size=len(VOCAB), hidden_size=32,
                        num_hidden_layers=2, num_attention_heads=2,
                        intermediate_size=64, max_position_embeddings=64)
    torch.manual_seed(1234)
    model = BertForMaskedLM(config)
    target = root / "tiny-mlm"
    model.save_pretrained(target)
    tokenizer.save_pretrained(target)
    return target
