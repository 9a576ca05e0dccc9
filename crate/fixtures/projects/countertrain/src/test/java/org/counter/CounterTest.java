package org.counter;

import static org.junit.Assert.assertEquals;

import org.junit.Test;

public class CounterTest {
    @Test
    public void clearsAfterIncrement() {
        Counter counter = new Counter();
        counter.increment();
        counter.reset();
        assertEquals(0, counter.get());
    }

    @Test
    public void incrementsOnce() {
        Counter counter = new Counter();
        counter.increment();
        assertEquals(1, counter.get());
    }

    @Test
    public void addsDelta() {
        Counter counter = new Counter();
        counter.add(5);
        assertEquals(5, counter.get());
    }
}
