# %% [markdown]
# # A single-producer/single-consumer Disruptor
#
# A ring of pre-allocated slots, a producer cursor and a consumer gating
# sequence.  The producer may run at most `capacity` events ahead.

# %%
import threading

from latencylab.disruptor import EventProcessor, Producer, SequenceBarrier, WaitStrategy, new_ring

ring = new_ring(8)
barrier = SequenceBarrier(ring, WaitStrategy.yielding())
producer = Producer(ring, barrier)
processor = EventProcessor(ring, barrier)
print(ring)

# %% [markdown]
# Publish five events with nobody consuming yet, then look at the cursors.

# %%
for i in range(5):
    producer.on_data(f"Event {i}")
print("cursor", ring.cursor.get(), "gating", ring.gating.get())
print("next claim would be", ring.cursor.get() + 1)

# %% [markdown]
# Fill the ring.  A non-blocking claim now fails because the slot it would
# reuse has not been consumed.

# %%
for i in range(5, 8):
    producer.on_data(f"Event {i}")
print("try_claim_next on a full ring ->", producer.try_claim_next())

# %% [markdown]
# Start the consumer on its own thread and push more events than the ring
# holds.  Back-pressure keeps the producer from lapping the consumer.

# %%
seen = []
consumer = threading.Thread(target=processor.run, args=(lambda payload, seq: seen.append(payload),))
consumer.start()
for i in range(8, 100):
    producer.on_data(f"Event {i}")
processor.stop()
consumer.join()
print(len(seen), "events, first", seen[0], "last", seen[-1])
print("in order:", seen == [f"Event {i}" for i in range(100)])

# %% [markdown]
# The two sequences live in separately padded cells, so their values sit on
# different cache lines.

# %%
print("cursor", ring.cursor.isolation_region())
print("gating", ring.gating.isolation_region())
